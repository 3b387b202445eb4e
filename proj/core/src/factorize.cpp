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

#include "knormal/factorize.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace knormal {

namespace {

bool factor_entry_less(const FqCtx& fq, const Factorization::Entry& a, const Factorization::Entry& b) {
    if (a.poly.c.size() != b.poly.c.size()) return a.poly.c.size() < b.poly.c.size();
    FqView fv{&fq};
    auto ia = poly_indices(fv, a.poly);
    auto ib = poly_indices(fv, b.poly);
    return ia < ib;
}

}  // namespace

std::vector<CyclotomicCoset> cyclotomic_cosets(u64 q, u64 m1) {
    if (m1 < 1) throw PreconditionViolated("coset modulus must be >= 1");
    if (std::gcd(q, m1) != 1) throw NotCoprime(q, m1);
    std::vector<bool> seen(m1, false);
    std::vector<CyclotomicCoset> out;
    for (u64 r = 0; r < m1; ++r) {
        if (seen[r]) continue;
        CyclotomicCoset c;
        c.modulus = m1;
        c.representative = r;
        u64 x = r;
        do {
            seen[x] = true;
            c.members.push_back(x);
            x = mulmod_u64(x, q % m1, m1);
        } while (x != r);
        std::sort(c.members.begin(), c.members.end());
        out.push_back(std::move(c));
    }
    return out;
}

PolyFq xm_minus_1(const FqCtx& fq, u32 m) {
    FqView fv{&fq};
    return poly_xn_plus_const(fv, m, fq.neg(fq.one()));
}

Factorization factor_xm_minus_1(const FqCtx& fq, u32 m) {
    if (m < 1) throw PreconditionViolated("m must be >= 1");
    const u64 p = fq.p();
    u64 m1 = m;
    u64 pe = 1;
    while (m1 % p == 0) {
        m1 /= p;
        pe *= p;
    }

    FqView fv{&fq};
    Factorization fact;

    auto cosets = cyclotomic_cosets(fq.q(), m1);

    // r = ord_{m'}(q) is the size of the coset of 1 (1 for m' <= 2 handled
    // uniformly: all roots of x^{m'} - 1 already lie in F_q when r = 1).
    u32 r = 1;
    for (const auto& c : cosets)
        r = std::max<u32>(r, static_cast<u32>(c.members.size()));

    // Auxiliary splitting field F_{q^r} containing a root zeta of order m'.
    TowerCtx aux(fq, r, std::nullopt, 0);
    FqmElem gen = find_primitive_element(aux);
    FqmElem zeta = aux.pow(gen, (aux.field_size() - 1) / m1);

    std::vector<FqmElem> zeta_pow(m1, aux.one());
    for (u64 i = 1; i < m1; ++i) zeta_pow[i] = aux.mul(zeta_pow[i - 1], zeta);

    FqmView av{&aux};
    for (const auto& coset : cosets) {
        // prod_{i in C} (x - zeta^i) over F_{q^r}
        PolyFqm f = poly_one(av);
        for (u64 i : coset.members) {
            PolyFqm lin{{aux.neg(zeta_pow[i]), aux.one()}};
            f = poly_mul(av, f, lin);
        }
        // Project down: every coefficient must be a constant of F_q.
        PolyFq proj;
        proj.c.reserve(f.c.size());
        for (const auto& coef : f.c) {
            for (u32 i = 1; i < aux.m(); ++i)
                if (!fq.is_zero(aux.coordinate(coef, i)))
                    throw InternalInconsistency("cyclotomic coset factor has a coefficient outside F_q");
            proj.c.push_back(aux.coordinate(coef, 0));
        }
        poly_trim(fv, proj);
        if (poly_deg(proj) != static_cast<int>(coset.members.size()))
            throw InternalInconsistency("coset factor degree mismatch");
        fact.entries.push_back({std::move(proj), static_cast<u32>(pe)});
    }

    std::sort(fact.entries.begin(), fact.entries.end(),
              [&](const auto& a, const auto& b) { return factor_entry_less(fq, a, b); });

    // Round-trip and irreducibility validation.
    for (const auto& e : fact.entries)
        if (!is_irreducible(fv, e.poly)) throw InternalInconsistency("coset factor not irreducible");
    if (!poly_eq(fv, factorization_product(fq, fact), xm_minus_1(fq, m)))
        throw InternalInconsistency("factorization does not reproduce x^m - 1");

    return fact;
}

PolyFq cyclotomic_poly(const FqCtx& fq, u32 d) {
    if (d < 1) throw PreconditionViolated("cyclotomic index must be >= 1");
    if (d % fq.p() == 0) throw CharDividesIndex(d);
    FqView fv{&fq};
    PolyFq num = poly_one(fv), den = poly_one(fv);
    for (u64 d1 = 1; d1 <= d; ++d1) {
        if (d % d1 != 0) continue;
        int mu = moebius_u64(d / d1);
        if (mu == 0) continue;
        PolyFq term = xm_minus_1(fq, static_cast<u32>(d1));
        if (mu == 1)
            num = poly_mul(fv, num, term);
        else
            den = poly_mul(fv, den, term);
    }
    auto [quot, rem] = poly_divmod(fv, num, den);
    if (!poly_is_zero(rem)) throw InternalInconsistency("cyclotomic Moebius division not exact");
    return quot;
}

u64 phi_q(const FqCtx& fq, const Factorization& fact) {
    const u128 limit = u128(1) << 64;
    u128 total = 1;
    for (const auto& e : fact.entries) {
        u32 d = static_cast<u32>(e.poly.c.size() - 1);
        u128 qd = 1;
        for (u32 i = 0; i < d; ++i) {
            qd *= fq.q();
            if (qd >= limit) throw Overflow("phi_q");
        }
        u128 term = qd - 1;
        for (u32 i = 0; i < d * (e.mult - 1); ++i) {
            term *= fq.q();
            if (term >= limit) throw Overflow("phi_q");
        }
        total *= term;
        if (total >= limit) throw Overflow("phi_q");
    }
    return static_cast<u64>(total);
}

std::vector<Factorization> divisors_by_degree(const Factorization& fact, u32 target_deg) {
    if (target_deg > fact.total_degree())
        throw PreconditionViolated("divisor degree exceeds total degree");
    std::vector<Factorization> out;
    std::vector<u32> exps(fact.entries.size(), 0);

    auto emit = [&] {
        Factorization d;
        for (size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > 0) d.entries.push_back({fact.entries[i].poly, exps[i]});
        out.push_back(std::move(d));
    };

    // Depth-first over exponent tuples in lexicographic order.
    auto rec = [&](auto&& self, size_t i, u32 remaining) -> void {
        if (i == fact.entries.size()) {
            if (remaining == 0) emit();
            return;
        }
        u32 d = static_cast<u32>(fact.entries[i].poly.c.size() - 1);
        u32 max_e = std::min(fact.entries[i].mult, remaining / d);
        for (u32 e = 0; e <= max_e; ++e) {
            exps[i] = e;
            self(self, i + 1, remaining - e * d);
        }
        exps[i] = 0;
    };
    rec(rec, 0, target_deg);
    return out;
}

PolyFq factorization_product(const FqCtx& fq, const Factorization& fact) {
    FqView fv{&fq};
    PolyFq prod = poly_one(fv);
    for (const auto& e : fact.entries)
        for (u32 i = 0; i < e.mult; ++i) prod = poly_mul(fv, prod, e.poly);
    return prod;
}

}  // namespace knormal
