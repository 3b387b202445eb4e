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

#ifndef KNORMAL_FACTORIZE_HPP
#define KNORMAL_FACTORIZE_HPP

#include <vector>

#include "knormal/poly.hpp"

namespace knormal {

/// Orbit of a residue under multiplication by q mod m'. The cosets for a
/// given modulus partition {0, ..., m'-1}; the size of the coset of r is the
/// degree of the irreducible factor of x^{m'} - 1 indexed by r.
struct CyclotomicCoset {
    u64 modulus = 0;
    u64 representative = 0;
    std::vector<u64> members;  // sorted
    bool operator==(const CyclotomicCoset&) const = default;
};

/// Multiset of monic irreducible factors, sorted by (degree, serialized
/// coefficient indices). The product of poly^mult reconstructs the input.
struct Factorization {
    struct Entry {
        PolyFq poly;
        u32 mult = 1;
    };
    std::vector<Entry> entries;

    u32 total_degree() const {
        u32 d = 0;
        for (const auto& e : entries) d += static_cast<u32>(e.poly.c.size() - 1) * e.mult;
        return d;
    }
    u64 divisor_total() const {
        u64 n = 1;
        for (const auto& e : entries) n *= e.mult + 1;
        return n;
    }
};

/// Partition of Z/m' into orbits under multiplication by q, sorted by
/// representative. Requires gcd(q, m') = 1.
std::vector<CyclotomicCoset> cyclotomic_cosets(u64 q, u64 m1);

/**
 * Deterministic factorization of x^m - 1 over F_q by cyclotomic cosets.
 *
 * Writes m = m' * p^e with gcd(m', p) = 1, so x^m - 1 = (x^{m'} - 1)^{p^e}.
 * Each q-cyclotomic coset C mod m' yields one irreducible factor, assembled
 * as prod_{i in C} (x - zeta^i) inside the auxiliary extension F_{q^r} with
 * r = ord_{m'}(q) and zeta of order m'; coefficients are projected back down
 * to F_q. A projected coefficient outside F_q aborts (never truncates).
 */
Factorization factor_xm_minus_1(const FqCtx& fq, u32 m);

/// The d-th cyclotomic polynomial over F_q via the Moebius product
/// prod_{d'|d} (x^{d'} - 1)^{mu(d/d')}, computed with exact division.
/// Requires gcd(d, p) = 1.
PolyFq cyclotomic_poly(const FqCtx& fq, u32 d);

/// Unit count of F_q[x]/(f) for the factored f: the product over factors
/// (degree d, multiplicity e) of q^{d(e-1)} (q^d - 1). Throws Overflow
/// instead of wrapping past 64 bits.
u64 phi_q(const FqCtx& fq, const Factorization& fact);

/// All monic divisors of the factored polynomial with the given degree, as
/// sub-factorizations in lexicographic exponent-tuple order. Empty result is
/// valid (no divisor of that degree).
std::vector<Factorization> divisors_by_degree(const Factorization& fact, u32 target_deg);

/// Re-multiplies a factorization; used to validate round trips.
PolyFq factorization_product(const FqCtx& fq, const Factorization& fact);

/// x^m - 1 as a polynomial over F_q.
PolyFq xm_minus_1(const FqCtx& fq, u32 m);

}  // namespace knormal

#endif
