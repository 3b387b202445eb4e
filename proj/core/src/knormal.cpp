/*
   Copyright 2026 the knormal authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "knormal/knormal.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <numeric>
#include <thread>

namespace knormal {

namespace {

constexpr u64 kVerifySampleSeed = 0x6b6e6f726d616c00ULL;  // fixed: sampling must be reproducible
constexpr u64 kVerifySampleSize = 1000;
constexpr u64 kExhaustiveVerifyLimit = 4096;

std::vector<FqmElem> conjugates(const TowerCtx& ctx, const FqmElem& a) {
    std::vector<FqmElem> c;
    c.reserve(ctx.m());
    c.push_back(a);
    for (u32 i = 1; i < ctx.m(); ++i) c.push_back(ctx.frobenius(c.back()));
    return c;
}

/// Reusable scratch for the span-dimension classifier: incremental row
/// reduction over F_q of the conjugate coordinate vectors, with early exit
/// once full rank is reached. Pivot rows are kept sorted by pivot cell so a
/// single ascending elimination pass suffices.
class SpanRank {
   public:
    explicit SpanRank(const TowerCtx& ctx)
        : ctx_(&ctx),
          w_(ctx.width()),
          s_(ctx.s()),
          m_(ctx.m()),
          rows_(size_t(ctx.m()) * ctx.width()),
          pivot_cell_(ctx.m()),
          conj_(ctx.width()),
          next_(ctx.width()),
          row_(ctx.width()),
          cell_(ctx.s()) {}

    u32 rank_of(std::span<const u64> alpha) {
        const FqCtx& fq = ctx_->fq();
        u32 nrows = 0;
        std::copy(alpha.begin(), alpha.end(), conj_.begin());
        for (u32 t = 0; t < m_; ++t) {
            if (t > 0) {
                ctx_->frobenius(std::span<const u64>(conj_), std::span<u64>(next_));
                conj_.swap(next_);
            }
            std::copy(conj_.begin(), conj_.end(), row_.begin());
            // Eliminate against stored pivots, ascending pivot cells.
            for (u32 r = 0; r < nrows; ++r) {
                u32 c = pivot_cell_[r];
                std::span<u64> head(row_.data() + size_t(c) * s_, s_);
                if (fq.is_zero(std::span<const u64>(head))) continue;
                std::copy_n(head.begin(), s_, cell_.begin());
                const u64* pivot = rows_.data() + size_t(r) * w_;
                for (u32 j = c; j < m_; ++j) {
                    fq.mul(std::span<const u64>(cell_.data(), s_),
                           std::span<const u64>(pivot + size_t(j) * s_, s_),
                           std::span<u64>(tmp_.data(), s_));
                    fq.sub(std::span<const u64>(row_.data() + size_t(j) * s_, s_),
                           std::span<const u64>(tmp_.data(), s_),
                           std::span<u64>(row_.data() + size_t(j) * s_, s_));
                }
            }
            // First nonzero cell becomes the pivot.
            u32 lead = m_;
            for (u32 j = 0; j < m_; ++j) {
                if (!fq.is_zero(std::span<const u64>(row_.data() + size_t(j) * s_, s_))) {
                    lead = j;
                    break;
                }
            }
            if (lead == m_) continue;
            fq.inv(std::span<const u64>(row_.data() + size_t(lead) * s_, s_),
                   std::span<u64>(cell_.data(), s_));
            u64* dst = rows_.data() + size_t(nrows) * w_;
            for (u32 j = 0; j < m_; ++j)
                fq.mul(std::span<const u64>(cell_.data(), s_),
                       std::span<const u64>(row_.data() + size_t(j) * s_, s_),
                       std::span<u64>(dst + size_t(j) * s_, s_));
            pivot_cell_[nrows] = lead;
            ++nrows;
            if (nrows == m_) break;
            // Keep pivots sorted by cell (insertion into position).
            for (u32 r = nrows - 1; r > 0 && pivot_cell_[r] < pivot_cell_[r - 1]; --r) {
                std::swap(pivot_cell_[r], pivot_cell_[r - 1]);
                std::swap_ranges(rows_.begin() + size_t(r) * w_, rows_.begin() + size_t(r + 1) * w_,
                                 rows_.begin() + size_t(r - 1) * w_);
            }
        }
        return nrows;
    }

   private:
    const TowerCtx* ctx_;
    u32 w_, s_, m_;
    std::vector<u64> rows_;
    std::vector<u32> pivot_cell_;
    std::vector<u64> conj_, next_, row_;
    std::vector<u64> cell_;
    std::array<u64, 64> tmp_{};
};

PolyFqm lift_xm_minus_1(const TowerCtx& ctx) {
    FqmView mv{&ctx};
    return poly_xn_plus_const(mv, ctx.m(), ctx.neg(ctx.one()));
}

u64 checked_q_pow(u64 q, u32 k) {
    u128 r = 1;
    for (u32 i = 0; i < k; ++i) {
        r *= q;
        if (r > u128(~u64(0))) throw Overflow("q^k");
    }
    return static_cast<u64>(r);
}

bool is_power_of(u64 n, u64 p) {
    if (n < 1) return false;
    while (n % p == 0) n /= p;
    return n == 1;
}

}  // namespace

FqmElem apply_module_action(const TowerCtx& ctx, const PolyFq& f, const FqmElem& a) {
    const u32 m = ctx.m();
    auto conj = conjugates(ctx, a);  // conjugate index wraps mod m: a^{q^m} = a
    FqmElem acc = ctx.zero();
    FqmElem term = ctx.zero();
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (ctx.fq().is_zero(f.c[i])) continue;
        ctx.scalar_mul(std::span<const u64>(f.c[i].d), std::span<const u64>(conj[i % m].d),
                       std::span<u64>(term.d));
        acc = ctx.add(acc, term);
    }
    return acc;
}

PolyFq ord_poly(const TowerCtx& ctx, const FqmElem& a, const Factorization& fact) {
    FqView fv{&ctx.fq()};
    PolyFq h = xm_minus_1(ctx.fq(), ctx.m());
    for (const auto& entry : fact.entries) {
        for (u32 e = 0; e < entry.mult; ++e) {
            auto [quot, rem] = poly_divmod(fv, h, entry.poly);
            if (!poly_is_zero(rem))
                throw InternalInconsistency("ord_poly: factor does not divide current annihilator");
            if (!ctx.is_zero(apply_module_action(ctx, quot, a))) break;
            h = std::move(quot);
        }
    }
    return h;
}

PolyFqm g_alpha(const TowerCtx& ctx, const FqmElem& a) {
    const u32 m = ctx.m();
    auto conj = conjugates(ctx, a);
    PolyFqm g;
    g.c.resize(m);
    for (u32 i = 0; i < m; ++i) g.c[m - 1 - i] = conj[i];  // coefficient of x^{m-1-i} is a^{q^i}
    FqmView mv{&ctx};
    poly_trim(mv, g);
    return g;
}

u32 k_via_gcd(const TowerCtx& ctx, const FqmElem& a) {
    FqmView mv{&ctx};
    auto g = poly_gcd(mv, lift_xm_minus_1(ctx), g_alpha(ctx, a));
    return static_cast<u32>(poly_deg(g));
}

u32 k_via_span(const TowerCtx& ctx, const FqmElem& a) {
    SpanRank sr(ctx);
    return ctx.m() - sr.rank_of(std::span<const u64>(a.d));
}

u32 k_via_rank(const TowerCtx& ctx, const FqmElem& a) {
    // Circulant conjugate matrix A[i][j] = a^{q^{(j-i) mod m}}; rank over F_{q^m}.
    const u32 m = ctx.m();
    auto conj = conjugates(ctx, a);
    std::vector<std::vector<FqmElem>> rows(m);
    for (u32 i = 0; i < m; ++i) {
        rows[i].reserve(m);
        for (u32 j = 0; j < m; ++j) rows[i].push_back(conj[(j + m - i) % m]);
    }
    u32 rank = 0;
    for (u32 col = 0; col < m && rank < m; ++col) {
        u32 sel = m;
        for (u32 r = rank; r < m; ++r) {
            if (!ctx.is_zero(rows[r][col])) {
                sel = r;
                break;
            }
        }
        if (sel == m) continue;
        std::swap(rows[rank], rows[sel]);
        FqmElem inv = ctx.inv(rows[rank][col]);
        for (u32 j = col; j < m; ++j) rows[rank][j] = ctx.mul(rows[rank][j], inv);
        for (u32 r = 0; r < m; ++r) {
            if (r == rank || ctx.is_zero(rows[r][col])) continue;
            FqmElem factor = rows[r][col];
            for (u32 j = col; j < m; ++j)
                rows[r][j] = ctx.sub(rows[r][j], ctx.mul(factor, rows[rank][j]));
        }
        ++rank;
    }
    return m - rank;
}

u32 k_via_ord(const TowerCtx& ctx, const FqmElem& a, const Factorization& fact) {
    return ctx.m() - static_cast<u32>(poly_deg(ord_poly(ctx, a, fact)));
}

u32 assert_four_way_agreement(const TowerCtx& ctx, const FqmElem& a, const Factorization& fact) {
    u32 kspan = k_via_span(ctx, a);
    u32 kgcd = k_via_gcd(ctx, a);
    u32 krank = k_via_rank(ctx, a);
    u32 kord = k_via_ord(ctx, a, fact);
    if (kspan != kgcd || kspan != krank || kspan != kord)
        throw MethodDisagreement("element index " + std::to_string(ctx.index_of(a)) + ": span=" +
                                 std::to_string(kspan) + " gcd=" + std::to_string(kgcd) +
                                 " rank=" + std::to_string(krank) + " ord=" + std::to_string(kord));
    return kspan;
}

KNormalityReport classify(const TowerCtx& ctx, const FqmElem& a, const Factorization& fact,
                          ClassifyMode mode) {
    KNormalityReport rep;
    rep.element = a;
    if (mode == ClassifyMode::Fast) {
        rep.k = k_via_span(ctx, a);
    } else {
        rep.k = assert_four_way_agreement(ctx, a, fact);
        rep.ord_poly = ord_poly(ctx, a, fact);
    }
    rep.gcd_deg = rep.k;
    rep.span_dim = ctx.m() - rep.k;
    rep.matrix_rank = ctx.m() - rep.k;
    return rep;
}

u64 count_k_normal_formula(const FqCtx& fq, u32 m, u32 k, const Factorization& fact) {
    if (k > m) throw PreconditionViolated("k must be in [0, m]");
    u128 total = 0;
    for (const auto& div : divisors_by_degree(fact, m - k)) {
        total += phi_q(fq, div);
        if (total > u128(~u64(0))) throw Overflow("count_k_normal_formula");
    }
    return static_cast<u64>(total);
}

u64 saygi_count(u64 q, u32 m, u32 k) {
    u64 p = decompose_prime_power(q).first;
    if (!is_power_of(m, p))
        throw PreconditionViolated("saygi_count: m is not a power of the characteristic");
    if (k >= m) throw PreconditionViolated("saygi_count: k must be in [0, m-1]");
    u128 r = q - 1;
    for (u32 i = 0; i < m - k - 1; ++i) {
        r *= q;
        if (r > u128(~u64(0))) throw Overflow("saygi_count");
    }
    return static_cast<u64>(r);
}

Rational lower_bound(const FqCtx& fq, u32 m, u32 k, const Factorization& fact) {
    if (k > m) throw PreconditionViolated("k must be in [0, m]");
    u64 num = phi_q(fq, fact);
    u64 den = checked_q_pow(fq.q(), k);
    u64 g = std::gcd(num, den);
    return Rational{num / g, den / g};
}

std::vector<BoundEvaluation> evaluate_bounds(const FqCtx& fq, u32 m, const Factorization& fact) {
    std::vector<BoundEvaluation> out;
    out.reserve(m + 1);
    bool saygi_applies = is_power_of(m, fq.p());
    for (u32 k = 0; k <= m; ++k) {
        BoundEvaluation b;
        b.q = fq.q();
        b.m = m;
        b.k = k;
        b.formula_count = count_k_normal_formula(fq, m, k, fact);
        Rational r = lower_bound(fq, m, k, fact);
        b.bound_num = r.num;
        b.bound_den = r.den;
        if (saygi_applies && k < m) b.saygi = saygi_count(fq.q(), m, k);
        b.divisor_count = static_cast<u64>(divisors_by_degree(fact, m - k).size());
        out.push_back(b);
    }
    return out;
}

ExistenceVerdict existence_verdict(u64 q, u32 m) {
    if (m < 1) throw PreconditionViolated("m must be >= 1");
    u64 p = decompose_prime_power(q).first;  // also validates q

    ExistenceVerdict v;
    v.q = q;
    v.m = m;
    v.per_k.assign(size_t(m) + 1, ExistTag::None);

    // d = gcd(q^m - 1, m) via (q^m - 1) mod m; no big integers.
    u64 qm_mod = powmod_u64(q % m, m, m);
    v.d = std::gcd((qm_mod + m - 1) % m, u64(m));

    bool divides = v.d == m;  // m | q^m - 1

    // b = largest prime dividing m but not q^m - 1 (may not exist).
    for (u64 prime : prime_divisors(m)) {
        if (powmod_u64(q % prime, m, prime) != 1 % prime) {
            if (!v.b || *v.b < prime) v.b = prime;
        }
    }

    bool reis = true;
    u128 pq1 = u128(p) * (q - 1);
    for (u64 prime : prime_divisors(m)) {
        if (pq1 % prime != 0) {
            reis = false;
            break;
        }
    }

    // Priority: unconditional, then divisibility, then the gcd window, then Reis.
    auto flag = [&](u32 k, ExistTag tag) {
        if (v.per_k[k] == ExistTag::None) v.per_k[k] = tag;
    };
    flag(0, ExistTag::Always);
    flag(m, ExistTag::Always);
    if (m >= 1) flag(1, ExistTag::Always);
    if (m >= 1) flag(m - 1, ExistTag::Always);

    if (divides) {
        for (u32 k = 0; k < m; ++k) flag(k, ExistTag::Divides);
    } else if (v.b && u128(v.d) * v.d > m) {  // sqrt(m) < d
        u64 lo = m >= v.d + *v.b - 1 ? m - v.d - *v.b + 1 : 0;
        for (u32 k = static_cast<u32>(lo); k < m; ++k) flag(k, ExistTag::Gcd);
    }
    if (reis) {
        for (u32 k = 0; k <= m; ++k) flag(k, ExistTag::Reis);
    }
    return v;
}

std::optional<FqmElem> find_k_normal(const TowerCtx& ctx, u32 k,
                                     [[maybe_unused]] const Factorization& fact, u64 size_guard) {
    if (k > ctx.m()) throw PreconditionViolated("k must be in [0, m]");
    if (ctx.field_size() > size_guard)
        throw SizeGuardExceeded("field size exceeds the search guard");
    SpanRank sr(ctx);
    FqmElem cur = ctx.zero();
    for (u64 idx = 0; idx < ctx.field_size(); ++idx) {
        if (idx > 0) {
            const u64 p = ctx.p();
            for (auto& digit : cur.d) {
                if (++digit < p) break;
                digit = 0;
            }
        }
        if (ctx.m() - sr.rank_of(std::span<const u64>(cur.d)) == k) return cur;
    }
    return std::nullopt;
}

namespace {

/// Walks the cyclic subgroup of order `target` and reports the 0-normal
/// members with exact order `target` to the callback (element span, subgroup
/// exponent u with gcd(u, target) = 1).
template <class Fn>
void for_each_order_normal(const TowerCtx& ctx, u64 target, Fn&& fn) {
    const u64 n = ctx.field_size() - 1;
    if (target < 1 || n % target != 0) throw NotADivisor(target, n);
    FqmElem gen = find_primitive_element(ctx);
    FqmElem delta = ctx.pow(gen, n / target);
    SpanRank sr(ctx);
    std::vector<u64> cur(ctx.width()), next(ctx.width());
    ctx.set_one(std::span<u64>(cur));
    for (u64 u = 0; u < target; ++u) {
        if (u > 0) {
            ctx.mul(std::span<const u64>(cur), std::span<const u64>(delta.d), std::span<u64>(next));
            cur.swap(next);
        }
        if (std::gcd(u, target) == 1 && sr.rank_of(std::span<const u64>(cur)) == ctx.m())
            fn(std::span<const u64>(cur));
    }
}

}  // namespace

std::optional<FqmElem> find_order_normal(const TowerCtx& ctx, u64 target_order,
                                         [[maybe_unused]] const Factorization& fact) {
    std::optional<u64> best;
    for_each_order_normal(ctx, target_order, [&](std::span<const u64> e) {
        u64 idx = ctx.index_of(e);
        if (!best || idx < *best) best = idx;
    });
    if (!best) return std::nullopt;
    return ctx.from_index(*best);
}

u64 count_order_normal(const TowerCtx& ctx, u64 target_order,
                       [[maybe_unused]] const Factorization& fact) {
    u64 count = 0;
    for_each_order_normal(ctx, target_order, [&](std::span<const u64>) { ++count; });
    return count;
}

u64 census_size_guard() {
    if (const char* env = std::getenv("KNORMAL_SIZE_GUARD")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0)
            throw ValidationError("KNORMAL_SIZE_GUARD must be a positive integer");
        return static_cast<u64>(v);
    }
    return kDefaultCensusGuard;
}

CensusReport census(const TowerCtx& ctx, const Factorization& fact, u32 workers,
                    ClassifyMode mode, u64 size_guard) {
    const u64 n = ctx.field_size();
    if (n > size_guard)
        throw SizeGuardExceeded("census of " + std::to_string(n) + " elements exceeds guard " +
                                std::to_string(size_guard));
    if (workers < 1) workers = 1;
    const u32 m = ctx.m();
    const auto t0 = std::chrono::steady_clock::now();

    CensusReport rep;
    rep.tower = ctx.description();
    rep.q = ctx.q();
    rep.m = m;
    rep.workers = workers;

    rep.formula_counts.resize(size_t(m) + 1);
    for (u32 k = 0; k <= m; ++k)
        rep.formula_counts[k] = count_k_normal_formula(ctx.fq(), m, k, fact);

    // Exhaustive pass: counts per k plus a bitmap of the 0-normal elements
    // (consumed by the order walk below). Worker ranges are aligned to 64
    // indices so bitmap words are never shared.
    std::vector<u64> normal_bits((n + 63) / 64, 0);
    std::vector<std::vector<u64>> local_counts(workers, std::vector<u64>(size_t(m) + 1, 0));
    u64 chunk = ((n + workers - 1) / workers + 63) & ~u64(63);
    std::vector<std::exception_ptr> errors(workers);

    auto worker_body = [&](u32 w) {
        u64 lo = w * chunk;
        u64 hi = std::min(n, lo + chunk);
        if (lo >= hi) return;
        SpanRank sr(ctx);
        std::vector<u64> cur(ctx.width());
        ctx.decode_index(lo, std::span<u64>(cur));
        const u64 p = ctx.p();
        for (u64 idx = lo; idx < hi; ++idx) {
            if (idx > lo) {
                for (auto& digit : cur) {
                    if (++digit < p) break;
                    digit = 0;
                }
            }
            u32 k = m - sr.rank_of(std::span<const u64>(cur));
            ++local_counts[w][k];
            if (k == 0) normal_bits[idx >> 6] |= u64(1) << (idx & 63);
        }
    };

    if (workers == 1) {
        worker_body(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (u32 w = 0; w < workers; ++w)
            threads.emplace_back([&, w] {
                try {
                    worker_body(w);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto& t : threads) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    rep.counts.assign(size_t(m) + 1, 0);
    for (const auto& lc : local_counts)
        for (u32 k = 0; k <= m; ++k) rep.counts[k] += lc[k];

    // Partition sanity, then the dual-oracle comparison.
    u64 sum = std::accumulate(rep.counts.begin(), rep.counts.end(), u64(0));
    if (sum != n) throw FormulaCensusMismatch("census counts sum to " + std::to_string(sum) +
                                              ", expected " + std::to_string(n));
    if (rep.counts[m] != 1)
        throw FormulaCensusMismatch("census found " + std::to_string(rep.counts[m]) +
                                    " m-normal elements, expected exactly the zero element");
    for (u32 k = 0; k <= m; ++k) {
        if (rep.counts[k] != rep.formula_counts[k])
            throw FormulaCensusMismatch(
                "q=" + std::to_string(ctx.q()) + " m=" + std::to_string(m) + " k=" +
                std::to_string(k) + ": census " + std::to_string(rep.counts[k]) + " vs formula " +
                std::to_string(rep.formula_counts[k]));
    }

    // Multiplicative walk over the unit group: exact orders come from
    // gcd(i, q^m - 1), 0-normality from the bitmap.
    if (n >= 2) {
        const u64 units = n - 1;
        FqmElem gen = find_primitive_element(ctx);
        std::vector<u64> cur(ctx.width()), next(ctx.width());
        ctx.set_one(std::span<u64>(cur));
        const u64 q1 = ctx.q() - 1;
        for (u64 i = 0; i < units; ++i) {
            if (i > 0) {
                ctx.mul(std::span<const u64>(cur), std::span<const u64>(gen.d), std::span<u64>(next));
                cur.swap(next);
            }
            u64 idx = ctx.index_of(std::span<const u64>(cur));
            if (normal_bits[idx >> 6] >> (idx & 63) & 1) {
                u64 g = std::gcd(i, units);
                if (g == 1) ++rep.primitive_normal;
                if (g == q1) ++rep.q1_primitive_normal;
            }
        }
    }

    if (mode == ClassifyMode::Verify) {
        if (n <= kExhaustiveVerifyLimit) {
            for (const FqmElem& a : enumerate_elements(ctx, 0, n))
                assert_four_way_agreement(ctx, a, fact);
        } else {
            SplitMix64 rng(kVerifySampleSeed ^ n);
            for (u64 i = 0; i < kVerifySampleSize; ++i)
                assert_four_way_agreement(ctx, ctx.from_index(rng.next() % n), fact);
        }
    }

    rep.bounds = evaluate_bounds(ctx.fq(), m, fact);
    rep.existence = existence_verdict(ctx.q(), m);

    // Theorem soundness: these can only fail on an implementation bug.
    for (u32 k = 0; k <= m; ++k) {
        if (rep.existence.per_k[k] != ExistTag::None && rep.counts[k] == 0)
            throw InternalInconsistency("existence guarantee for k=" + std::to_string(k) +
                                        " contradicts a zero census count");
        if (rep.counts[k] > 0) {
            u128 lhs = u128(rep.counts[k]) * checked_q_pow(ctx.q(), k);
            if (lhs < rep.bounds[0].bound_num)
                throw InternalInconsistency("lower bound violated at k=" + std::to_string(k));
        }
    }

    rep.elapsed_ms = static_cast<u64>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - t0)
                                          .count());
    return rep;
}

}  // namespace knormal
