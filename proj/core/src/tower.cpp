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

#include "knormal/tower.hpp"

#include <algorithm>
#include <array>

#include "knormal/poly.hpp"

namespace knormal {

namespace {

// q^m <= 2^62 implies m*s <= 62 total base-p digits per element, so fixed
// stack buffers cover every supported tower.
constexpr u32 kMaxWords = 63;
constexpr u32 kMaxProductWords = 2 * kMaxWords;

u64 checked_pow_u64(u64 base, u32 exp, const char* what) {
    u128 r = 1;
    for (u32 i = 0; i < exp; ++i) {
        r *= base;
        if (r > kMaxFieldSize) throw SizeGuardExceeded(std::string(what) + " exceeds 2^62");
    }
    return static_cast<u64>(r);
}

}  // namespace

// ---------------------------------------------------------------------------
// FqCtx

FqCtx::FqCtx(u64 p, u32 s, const std::optional<std::vector<u64>>& f, u64 seed)
    : p_(p), s_(s), seed_(seed) {
    if (!is_prime_u64(p)) throw NotPrime(p);
    if (s < 1) throw PreconditionViolated("extension degree s must be >= 1");
    q_ = checked_pow_u64(p, s, "q = p^s");

    FpView fp{p_};
    if (f) {
        if (f->size() != size_t(s) + 1 || (*f)[s] != 1)
            throw PreconditionViolated("modulus f must be monic of degree s");
        for (u64 c : *f)
            if (c >= p) throw PreconditionViolated("modulus f has a coefficient >= p");
        PolyFp fpoly{*f};
        if (!is_irreducible(fp, fpoly)) throw NotIrreducible("f over F_p");
        f_ = *f;
    } else {
        // Deterministic scan: first irreducible monic polynomial at or after
        // the seed offset in canonical index order, wrapping.
        for (u64 tries = 0; tries < q_; ++tries) {
            u64 j = (seed % q_ + tries) % q_;
            std::vector<u64> cand(size_t(s) + 1, 0);
            u64 t = j;
            for (u32 i = 0; i < s; ++i) {
                cand[i] = t % p;
                t /= p;
            }
            cand[s] = 1;
            PolyFp fpoly{cand};
            poly_trim(fp, fpoly);
            if (is_irreducible(fp, fpoly)) {
                f_ = cand;
                break;
            }
        }
        if (f_.empty()) throw InternalInconsistency("no irreducible modulus found for F_q");
    }

    // red_[j] = coordinates of y^{s+j} mod f, for j in [0, s-1).
    if (s_ > 1) {
        red_.assign(size_t(s_ - 1) * s_, 0);
        std::vector<u64> row(s_);
        for (u32 i = 0; i < s_; ++i) row[i] = p_neg(f_[i]);  // y^s = -(f_0 + ... + f_{s-1} y^{s-1})
        for (u32 j = 0; j + 1 < s_; ++j) {
            std::copy(row.begin(), row.end(), red_.begin() + size_t(j) * s_);
            if (j + 2 < s_) {
                u64 carry = row[s_ - 1];
                for (u32 i = s_ - 1; i > 0; --i) row[i] = row[i - 1];
                row[0] = 0;
                if (carry)
                    for (u32 i = 0; i < s_; ++i)
                        row[i] = p_add(row[i], p_mul(carry, red_[i]));  // + carry * y^s
            }
        }
    }
}

u64 FqCtx::p_pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p_;
    while (e) {
        if (e & 1) r = p_mul(r, a);
        a = p_mul(a, a);
        e >>= 1;
    }
    return r;
}

u64 FqCtx::p_inv(u64 a) const {
    if (a == 0) throw DivisionByZero();
    return p_pow(a, p_ - 2);
}

void FqCtx::add(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const {
    for (u32 i = 0; i < s_; ++i) out[i] = p_add(a[i], b[i]);
}

void FqCtx::sub(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const {
    for (u32 i = 0; i < s_; ++i) out[i] = p_sub(a[i], b[i]);
}

void FqCtx::neg(std::span<const u64> a, std::span<u64> out) const {
    for (u32 i = 0; i < s_; ++i) out[i] = p_neg(a[i]);
}

void FqCtx::mul(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const {
    // Schoolbook product into a 128-bit accumulator, then reduction by the
    // cached rows of y^{s+j} mod f. Accumulator bounds: 2s(p-1)^2 < 2^128
    // whenever p^s <= 2^62.
    std::array<u128, 2 * kMaxWords - 1> acc;
    u32 plen = 2 * s_ - 1;
    std::fill(acc.begin(), acc.begin() + plen, u128(0));
    for (u32 i = 0; i < s_; ++i) {
        if (a[i] == 0) continue;
        for (u32 j = 0; j < s_; ++j) acc[i + j] += u128(a[i]) * b[j];
    }
    for (u32 t = plen; t-- > s_;) {
        u64 c = static_cast<u64>(acc[t] % p_);
        if (c == 0) continue;
        const u64* row = red_.data() + size_t(t - s_) * s_;
        for (u32 i = 0; i < s_; ++i) acc[i] += u128(c) * row[i];
    }
    for (u32 i = 0; i < s_; ++i) out[i] = static_cast<u64>(acc[i] % p_);
}

void FqCtx::addmul(std::span<u64> acc, std::span<const u64> a, std::span<const u64> b) const {
    std::array<u64, kMaxWords> tmp;
    mul(a, b, std::span<u64>(tmp.data(), s_));
    for (u32 i = 0; i < s_; ++i) acc[i] = p_add(acc[i], tmp[i]);
}

void FqCtx::pow(std::span<const u64> a, u64 e, std::span<u64> out) const {
    std::array<u64, kMaxWords> base, res, tmp;
    std::copy(a.begin(), a.end(), base.begin());
    set_one(std::span<u64>(res.data(), s_));
    while (e) {
        if (e & 1) {
            mul(std::span<const u64>(res.data(), s_), std::span<const u64>(base.data(), s_),
                std::span<u64>(tmp.data(), s_));
            std::copy_n(tmp.begin(), s_, res.begin());
        }
        e >>= 1;
        if (e) {
            mul(std::span<const u64>(base.data(), s_), std::span<const u64>(base.data(), s_),
                std::span<u64>(tmp.data(), s_));
            std::copy_n(tmp.begin(), s_, base.begin());
        }
    }
    std::copy_n(res.begin(), s_, out.begin());
}

void FqCtx::inv(std::span<const u64> a, std::span<u64> out) const {
    if (is_zero(a)) throw DivisionByZero();
    pow(a, q_ - 2, out);
}

bool FqCtx::is_zero(std::span<const u64> a) const {
    for (u32 i = 0; i < s_; ++i)
        if (a[i]) return false;
    return true;
}

void FqCtx::set_zero(std::span<u64> a) const { std::fill_n(a.begin(), s_, 0); }

void FqCtx::set_one(std::span<u64> a) const {
    set_zero(a);
    a[0] = 1;
}

FqElem FqCtx::one() const {
    FqElem r{std::vector<u64>(s_, 0)};
    r.d[0] = 1;
    return r;
}

FqElem FqCtx::add(const FqElem& a, const FqElem& b) const {
    FqElem r = zero();
    add(std::span<const u64>(a.d), std::span<const u64>(b.d), std::span<u64>(r.d));
    return r;
}

FqElem FqCtx::sub(const FqElem& a, const FqElem& b) const {
    FqElem r = zero();
    sub(std::span<const u64>(a.d), std::span<const u64>(b.d), std::span<u64>(r.d));
    return r;
}

FqElem FqCtx::neg(const FqElem& a) const {
    FqElem r = zero();
    neg(std::span<const u64>(a.d), std::span<u64>(r.d));
    return r;
}

FqElem FqCtx::mul(const FqElem& a, const FqElem& b) const {
    FqElem r = zero();
    mul(std::span<const u64>(a.d), std::span<const u64>(b.d), std::span<u64>(r.d));
    return r;
}

FqElem FqCtx::inv(const FqElem& a) const {
    FqElem r = zero();
    inv(std::span<const u64>(a.d), std::span<u64>(r.d));
    return r;
}

FqElem FqCtx::pow(const FqElem& a, u64 e) const {
    FqElem r = zero();
    pow(std::span<const u64>(a.d), e, std::span<u64>(r.d));
    return r;
}

u64 FqCtx::index_of(std::span<const u64> a) const {
    u64 idx = 0;
    for (u32 i = s_; i-- > 0;) idx = idx * p_ + a[i];
    return idx;
}

FqElem FqCtx::from_index(u64 idx) const {
    FqElem r = zero();
    decode_index(idx, std::span<u64>(r.d));
    return r;
}

void FqCtx::decode_index(u64 idx, std::span<u64> out) const {
    if (idx >= q_) throw RangeOutOfBounds();
    for (u32 i = 0; i < s_; ++i) {
        out[i] = idx % p_;
        idx /= p_;
    }
}

// ---------------------------------------------------------------------------
// TowerCtx

TowerCtx::TowerCtx(FqCtx base, u32 m, const std::optional<std::vector<FqElem>>& g, u64 seed)
    : fq_(std::move(base)), m_(m), seed_(seed) {
    if (m < 1) throw PreconditionViolated("extension degree m must be >= 1");
    field_size_ = checked_pow_u64(fq_.q(), m, "q^m");

    FqView fv{&fq_};
    if (g) {
        if (g->size() != size_t(m) + 1 || !((*g)[m] == fq_.one()))
            throw PreconditionViolated("modulus g must be monic of degree m");
        for (const auto& c : *g)
            if (c.d.size() != fq_.s()) throw PreconditionViolated("modulus g coefficient width");
        PolyFq gpoly{*g};
        if (!is_irreducible(fv, gpoly)) throw NotIrreducible("g over F_q");
        g_ = *g;
    } else {
        u64 q = fq_.q();
        for (u64 tries = 0; tries < field_size_; ++tries) {
            u64 j = (seed % field_size_ + tries) % field_size_;
            std::vector<FqElem> cand(size_t(m) + 1, fq_.zero());
            u64 t = j;
            for (u32 i = 0; i < m; ++i) {
                cand[i] = fq_.from_index(t % q);
                t /= q;
            }
            cand[m] = fq_.one();
            PolyFq gpoly{cand};
            if (is_irreducible(fv, gpoly)) {
                g_ = cand;
                break;
            }
        }
        if (g_.empty()) throw InternalInconsistency("no irreducible modulus found for F_{q^m}");
    }

    const u32 s = fq_.s();
    const u32 w = width();

    // gred_[j] = coordinates of z^{m+j} mod g, j in [0, m-1).
    if (m_ > 1) {
        gred_.assign(size_t(m_ - 1) * w, 0);
        std::vector<u64> row(w, 0);
        for (u32 i = 0; i < m_; ++i) {
            FqElem c = fq_.neg(g_[i]);
            std::copy(c.d.begin(), c.d.end(), row.begin() + size_t(i) * s);
        }
        std::array<u64, kMaxWords> tmp;
        for (u32 j = 0; j + 1 < m_; ++j) {
            std::copy(row.begin(), row.end(), gred_.begin() + size_t(j) * w);
            if (j + 2 < m_) {
                std::vector<u64> carry(row.end() - s, row.end());
                for (u32 i = m_ - 1; i > 0; --i)
                    std::copy_n(row.begin() + size_t(i - 1) * s, s, row.begin() + size_t(i) * s);
                std::fill_n(row.begin(), s, 0);
                if (!fq_.is_zero(std::span<const u64>(carry))) {
                    for (u32 i = 0; i < m_; ++i) {
                        fq_.mul(std::span<const u64>(carry),
                                std::span<const u64>(gred_.data() + size_t(i) * s, s),
                                std::span<u64>(tmp.data(), s));
                        fq_.add(std::span<const u64>(row.data() + size_t(i) * s, s),
                                std::span<const u64>(tmp.data(), s),
                                std::span<u64>(row.data() + size_t(i) * s, s));
                    }
                }
            }
        }
    }

    // Frobenius matrix: column i holds the coordinates of z^{iq} = (z^q)^i.
    frob_.assign(size_t(m_) * w, 0);
    std::vector<u64> zq(w, 0);
    if (m_ == 1) {
        FqElem c = fq_.neg(g_[0]);  // z = -g_0 is a constant of F_q
        std::copy(c.d.begin(), c.d.end(), zq.begin());
        pow(std::span<const u64>(zq), fq_.q(), std::span<u64>(zq));
    } else {
        std::vector<u64> z(w, 0);
        z[s] = 1;
        pow(std::span<const u64>(z), fq_.q(), std::span<u64>(zq));
    }
    std::vector<u64> col(w, 0), tmp(w, 0);
    set_one(std::span<u64>(col));
    for (u32 i = 0; i < m_; ++i) {
        std::copy(col.begin(), col.end(), frob_.begin() + size_t(i) * w);
        if (i + 1 < m_) {
            mul(std::span<const u64>(col), std::span<const u64>(zq), std::span<u64>(tmp));
            col.swap(tmp);
        }
    }

    check_frobenius_order();

    order_factors_ = field_size_ > 1 ? factor_u64(field_size_ - 1) : IntFactorization{};
}

void TowerCtx::check_frobenius_order() const {
    // Applying the matrix m times must be the identity (x^{q^m} = x).
    const u32 w = width();
    std::vector<u64> v(w), t(w);
    for (u32 j = 0; j < m_; ++j) {
        std::fill(v.begin(), v.end(), 0);
        fq_.set_one(std::span<u64>(v.data() + size_t(j) * fq_.s(), fq_.s()));
        std::vector<u64> unit = v;
        for (u32 it = 0; it < m_; ++it) {
            frobenius(std::span<const u64>(v), std::span<u64>(t));
            v.swap(t);
        }
        if (v != unit) throw InternalInconsistency("frobenius matrix does not have order m");
    }
}

TowerDesc TowerCtx::description() const {
    TowerDesc d;
    d.p = fq_.p();
    d.s = fq_.s();
    d.m = m_;
    d.f = fq_.modulus();
    d.g.reserve(g_.size());
    for (const auto& c : g_) d.g.push_back(fq_.index_of(c));
    d.seed = seed_;
    return d;
}

void TowerCtx::add(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const {
    const u32 w = width();
    for (u32 i = 0; i < w; ++i) out[i] = fq_.p_add(a[i], b[i]);
}

void TowerCtx::sub(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const {
    const u32 w = width();
    for (u32 i = 0; i < w; ++i) out[i] = fq_.p_sub(a[i], b[i]);
}

void TowerCtx::neg(std::span<const u64> a, std::span<u64> out) const {
    const u32 w = width();
    for (u32 i = 0; i < w; ++i) out[i] = fq_.p_neg(a[i]);
}

void TowerCtx::mul(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const {
    const u32 s = fq_.s();
    const u32 w = width();
    std::array<u64, kMaxProductWords> acc;
    std::array<u64, kMaxWords> tmp;
    u32 cells = 2 * m_ - 1;
    std::fill(acc.begin(), acc.begin() + size_t(cells) * s, 0);
    auto accsp = [&](u32 cell) { return std::span<u64>(acc.data() + size_t(cell) * s, s); };
    for (u32 i = 0; i < m_; ++i) {
        std::span<const u64> ai(a.data() + size_t(i) * s, s);
        if (fq_.is_zero(ai)) continue;
        for (u32 j = 0; j < m_; ++j) {
            std::span<const u64> bj(b.data() + size_t(j) * s, s);
            if (fq_.is_zero(bj)) continue;
            fq_.addmul(accsp(i + j), ai, bj);
        }
    }
    for (u32 t = cells; t-- > m_;) {
        std::span<const u64> c(acc.data() + size_t(t) * s, s);
        if (fq_.is_zero(c)) continue;
        const u64* row = gred_.data() + size_t(t - m_) * w;
        for (u32 i = 0; i < m_; ++i) {
            fq_.mul(c, std::span<const u64>(row + size_t(i) * s, s), std::span<u64>(tmp.data(), s));
            fq_.add(std::span<const u64>(acc.data() + size_t(i) * s, s),
                    std::span<const u64>(tmp.data(), s), accsp(i));
        }
    }
    std::copy_n(acc.begin(), w, out.begin());
}

void TowerCtx::frobenius(std::span<const u64> in, std::span<u64> out) const {
    const u32 s = fq_.s();
    std::array<u64, kMaxWords> tmp;
    set_zero(out);
    for (u32 i = 0; i < m_; ++i) {
        std::span<const u64> ci(in.data() + size_t(i) * s, s);
        if (fq_.is_zero(ci)) continue;
        const u64* col = frob_.data() + size_t(i) * width();
        for (u32 j = 0; j < m_; ++j) {
            std::span<const u64> mij(col + size_t(j) * s, s);
            if (fq_.is_zero(mij)) continue;
            fq_.mul(mij, ci, std::span<u64>(tmp.data(), s));
            fq_.add(std::span<const u64>(out.data() + size_t(j) * s, s),
                    std::span<const u64>(tmp.data(), s),
                    std::span<u64>(out.data() + size_t(j) * s, s));
        }
    }
}

void TowerCtx::pow(std::span<const u64> a, u64 e, std::span<u64> out) const {
    const u32 w = width();
    std::array<u64, kMaxWords> base, res, tmp;
    std::copy(a.begin(), a.begin() + w, base.begin());
    set_one(std::span<u64>(res.data(), w));
    while (e) {
        if (e & 1) {
            mul(std::span<const u64>(res.data(), w), std::span<const u64>(base.data(), w),
                std::span<u64>(tmp.data(), w));
            std::copy_n(tmp.begin(), w, res.begin());
        }
        e >>= 1;
        if (e) {
            mul(std::span<const u64>(base.data(), w), std::span<const u64>(base.data(), w),
                std::span<u64>(tmp.data(), w));
            std::copy_n(tmp.begin(), w, base.begin());
        }
    }
    std::copy_n(res.begin(), w, out.begin());
}

void TowerCtx::inv(std::span<const u64> a, std::span<u64> out) const {
    if (is_zero(a)) throw DivisionByZero();
    // Extended Euclid on the coordinate polynomial modulo g.
    FqView fv{&fq_};
    const u32 s = fq_.s();
    PolyFq A;
    A.c.reserve(m_);
    for (u32 i = 0; i < m_; ++i) {
        FqElem c = fq_.zero();
        std::copy_n(a.begin() + size_t(i) * s, s, c.d.begin());
        A.c.push_back(std::move(c));
    }
    poly_trim(fv, A);
    PolyFq G{g_};
    PolyFq r0 = G, r1 = A;
    PolyFq t0 = poly_zero<FqView>(), t1 = poly_one(fv);
    while (!poly_is_zero(r1)) {
        auto [quot, rem] = poly_divmod(fv, r0, r1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        PolyFq t2 = poly_sub(fv, t0, poly_mul(fv, quot, t1));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 = gcd(A, g) is a nonzero constant (g irreducible, deg A < deg g).
    if (poly_deg(r0) != 0) throw InternalInconsistency("gcd(a, g) not constant in inversion");
    PolyFq u = poly_scale(fv, t0, fv.inv(r0.c[0]));
    u = poly_mod(fv, u, G);
    set_zero(out);
    for (size_t i = 0; i < u.c.size(); ++i)
        std::copy(u.c[i].d.begin(), u.c[i].d.end(), out.begin() + i * s);
}

void TowerCtx::scalar_mul(std::span<const u64> c, std::span<const u64> a, std::span<u64> out) const {
    const u32 s = fq_.s();
    for (u32 i = 0; i < m_; ++i)
        fq_.mul(c, std::span<const u64>(a.data() + size_t(i) * s, s),
                std::span<u64>(out.data() + size_t(i) * s, s));
}

bool TowerCtx::is_zero(std::span<const u64> a) const {
    const u32 w = width();
    for (u32 i = 0; i < w; ++i)
        if (a[i]) return false;
    return true;
}

bool TowerCtx::is_one(std::span<const u64> a) const {
    const u32 w = width();
    if (a[0] != 1) return false;
    for (u32 i = 1; i < w; ++i)
        if (a[i]) return false;
    return true;
}

void TowerCtx::set_zero(std::span<u64> a) const { std::fill_n(a.begin(), width(), 0); }

void TowerCtx::set_one(std::span<u64> a) const {
    set_zero(a);
    a[0] = 1;
}

u64 TowerCtx::index_of(std::span<const u64> a) const {
    // The canonical index is the little-endian base-p integer over all m*s
    // digits: sum_i idx(c_i) q^i with q = p^s collapses to one mixed radix.
    u64 idx = 0;
    const u64 p = fq_.p();
    for (u32 i = width(); i-- > 0;) idx = idx * p + a[i];
    return idx;
}

void TowerCtx::decode_index(u64 idx, std::span<u64> out) const {
    if (idx >= field_size_) throw RangeOutOfBounds();
    const u64 p = fq_.p();
    const u32 w = width();
    for (u32 i = 0; i < w; ++i) {
        out[i] = idx % p;
        idx /= p;
    }
}

FqmElem TowerCtx::one() const {
    FqmElem r = zero();
    r.d[0] = 1;
    return r;
}

FqmElem TowerCtx::add(const FqmElem& a, const FqmElem& b) const {
    FqmElem r = zero();
    add(std::span<const u64>(a.d), std::span<const u64>(b.d), std::span<u64>(r.d));
    return r;
}

FqmElem TowerCtx::sub(const FqmElem& a, const FqmElem& b) const {
    FqmElem r = zero();
    sub(std::span<const u64>(a.d), std::span<const u64>(b.d), std::span<u64>(r.d));
    return r;
}

FqmElem TowerCtx::neg(const FqmElem& a) const {
    FqmElem r = zero();
    neg(std::span<const u64>(a.d), std::span<u64>(r.d));
    return r;
}

FqmElem TowerCtx::mul(const FqmElem& a, const FqmElem& b) const {
    FqmElem r = zero();
    mul(std::span<const u64>(a.d), std::span<const u64>(b.d), std::span<u64>(r.d));
    return r;
}

FqmElem TowerCtx::inv(const FqmElem& a) const {
    FqmElem r = zero();
    inv(std::span<const u64>(a.d), std::span<u64>(r.d));
    return r;
}

FqmElem TowerCtx::pow(const FqmElem& a, u64 e) const {
    FqmElem r = zero();
    pow(std::span<const u64>(a.d), e, std::span<u64>(r.d));
    return r;
}

FqmElem TowerCtx::frobenius(const FqmElem& a) const {
    FqmElem r = zero();
    frobenius(std::span<const u64>(a.d), std::span<u64>(r.d));
    return r;
}

FqmElem TowerCtx::from_index(u64 idx) const {
    FqmElem r = zero();
    decode_index(idx, std::span<u64>(r.d));
    return r;
}

FqElem TowerCtx::coordinate(const FqmElem& a, u32 i) const {
    const u32 s = fq_.s();
    FqElem c = fq_.zero();
    std::copy_n(a.d.begin() + size_t(i) * s, s, c.d.begin());
    return c;
}

FqmElem TowerCtx::from_coordinates(const std::vector<FqElem>& coords) const {
    if (coords.size() != m_) throw PreconditionViolated("coordinate vector must have length m");
    FqmElem r = zero();
    const u32 s = fq_.s();
    for (u32 i = 0; i < m_; ++i)
        std::copy(coords[i].d.begin(), coords[i].d.end(), r.d.begin() + size_t(i) * s);
    return r;
}

// ---------------------------------------------------------------------------

TowerCtx build_tower(u64 p, u32 s, u32 m, const std::optional<std::vector<u64>>& f_indices,
                     const std::optional<std::vector<u64>>& g_indices, u64 seed) {
    FqCtx base(p, s, f_indices, seed);
    std::optional<std::vector<FqElem>> g;
    if (g_indices) {
        std::vector<FqElem> coeffs;
        coeffs.reserve(g_indices->size());
        for (u64 i : *g_indices) {
            if (i >= base.q()) throw PreconditionViolated("g coefficient index out of range");
            coeffs.push_back(base.from_index(i));
        }
        g = std::move(coeffs);
    }
    return TowerCtx(std::move(base), m, g, seed);
}

u64 multiplicative_order(const TowerCtx& ctx, const FqmElem& a) {
    if (ctx.is_zero(a)) throw ZeroElement();
    u64 ord = ctx.field_size() - 1;
    for (const auto& f : ctx.unit_group_factors()) {
        while (ord % f.prime == 0 && ctx.is_one(ctx.pow(a, ord / f.prime))) ord /= f.prime;
    }
    return ord;
}

FqmElem find_primitive_element(const TowerCtx& ctx) {
    const u64 n = ctx.field_size() - 1;
    for (u64 idx = 1; idx < ctx.field_size(); ++idx) {
        FqmElem a = ctx.from_index(idx);
        bool primitive = true;
        for (const auto& f : ctx.unit_group_factors()) {
            if (ctx.is_one(ctx.pow(a, n / f.prime))) {
                primitive = false;
                break;
            }
        }
        if (primitive) return a;
    }
    throw InternalInconsistency("no primitive element found");  // unreachable: F_{q^m}^* is cyclic
}

// ---------------------------------------------------------------------------

ElementRange::ElementRange(const TowerCtx& ctx, u64 lo, u64 hi) : ctx_(&ctx), lo_(lo), hi_(hi) {
    if (lo > hi || hi > ctx.field_size()) throw RangeOutOfBounds();
}

ElementRange::iterator::iterator(const TowerCtx* ctx, u64 pos) : ctx_(ctx), pos_(pos) {
    cur_ = ctx_->zero();
    if (pos_ < ctx_->field_size()) ctx_->decode_index(pos_, std::span<u64>(cur_.d));
}

ElementRange::iterator& ElementRange::iterator::operator++() {
    ++pos_;
    // Base-p odometer increment, cheaper than re-decoding the index.
    const u64 p = ctx_->p();
    for (auto& digit : cur_.d) {
        if (++digit < p) return *this;
        digit = 0;
    }
    return *this;
}

}  // namespace knormal
