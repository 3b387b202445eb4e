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

#ifndef KNORMAL_KNORMAL_HPP
#define KNORMAL_KNORMAL_HPP

#include <optional>

#include "knormal/factorize.hpp"

namespace knormal {

// An element a of F_{q^m} is k-normal over F_q when its conjugates
// {a, a^q, ..., a^{q^{m-1}}} span an F_q-subspace of dimension m - k.
// Four equivalent characterizations are implemented and cross-checked:
//   span:  m minus the F_q-dimension of the conjugate span,
//   gcd:   deg gcd(x^m - 1, g_a(x)) over F_{q^m},
//   ord:   m minus the degree of the minimal annihilator Ord(a),
//   rank:  m minus the rank of the m x m circulant conjugate matrix
//          (taken over F_{q^m}).

enum class ClassifyMode { Fast, Verify };

/// Per-element verdict. In Fast mode only the span method runs and the
/// numeric fields are derived from it; ord_poly is filled in Verify mode.
struct KNormalityReport {
    FqmElem element;
    u32 k = 0;
    std::optional<PolyFq> ord_poly;  // monic, degree m - k, divides x^m - 1
    u32 gcd_deg = 0;                 // = k
    u32 span_dim = 0;                // = m - k
    u32 matrix_rank = 0;             // = m - k
};

/// Exact nonnegative rational in lowest terms.
struct Rational {
    u64 num = 0;
    u64 den = 1;
    bool operator==(const Rational&) const = default;
};

/// Counting-formula value, lower bound and divisor count for one k.
struct BoundEvaluation {
    u64 q = 0;
    u32 m = 0;
    u32 k = 0;
    u64 formula_count = 0;           // n_k
    u64 bound_num = 0;               // phi_q(x^m - 1) / q^k in lowest terms
    u64 bound_den = 1;
    std::optional<u64> saygi;        // (q-1) q^{m-k-1} when m is a p-power, k <= m-1
    u64 divisor_count = 0;           // divisors of x^m - 1 with degree m - k
};

/// Provenance of a per-k existence guarantee. Guarantees only: None never
/// claims non-existence.
enum class ExistTag { None, Always, Divides, Gcd, Reis };

struct ExistenceVerdict {
    u64 q = 0;
    u32 m = 0;
    u64 d = 0;                 // gcd(q^m - 1, m), computed without big integers
    std::optional<u64> b;      // largest prime dividing m but not q^m - 1
    std::vector<ExistTag> per_k;  // length m + 1
};

struct CensusReport {
    TowerDesc tower;
    u64 q = 0;
    u32 m = 0;
    std::vector<u64> counts;          // exhaustive per-k counts, length m + 1
    std::vector<u64> formula_counts;  // same shape, from the divisor-sum formula
    std::vector<BoundEvaluation> bounds;
    ExistenceVerdict existence;
    u64 primitive_normal = 0;      // 0-normal with order q^m - 1
    u64 q1_primitive_normal = 0;   // 0-normal with order (q^m - 1)/(q - 1)
    u64 elapsed_ms = 0;
    u32 workers = 1;
};

/// The F_q[x]-module action: (sum a_i x^i) . a = sum a_i a^{q^i}. Linear in
/// a, multiplicative in f modulo x^m - 1.
FqmElem apply_module_action(const TowerCtx& ctx, const PolyFq& f, const FqmElem& a);

/// Minimal monic h dividing x^m - 1 with h . a = 0, found by stripping
/// factor multiplicities while annihilation persists. Ord(0) = 1.
PolyFq ord_poly(const TowerCtx& ctx, const FqmElem& a, const Factorization& fact);

/// g_a(x) = sum_{i<m} a^{q^i} x^{m-1-i} over F_{q^m}.
PolyFqm g_alpha(const TowerCtx& ctx, const FqmElem& a);

u32 k_via_gcd(const TowerCtx& ctx, const FqmElem& a);
u32 k_via_span(const TowerCtx& ctx, const FqmElem& a);
u32 k_via_rank(const TowerCtx& ctx, const FqmElem& a);
u32 k_via_ord(const TowerCtx& ctx, const FqmElem& a, const Factorization& fact);

/// Throws MethodDisagreement unless all four characterizations agree.
u32 assert_four_way_agreement(const TowerCtx& ctx, const FqmElem& a, const Factorization& fact);

KNormalityReport classify(const TowerCtx& ctx, const FqmElem& a, const Factorization& fact,
                          ClassifyMode mode);

/// Number of k-normal elements: sum of phi_q(h) over monic divisors h of
/// x^m - 1 with deg h = m - k; 0 when no such divisor exists.
u64 count_k_normal_formula(const FqCtx& fq, u32 m, u32 k, const Factorization& fact);

/// Closed form (q - 1) q^{m-k-1}, valid when m is a power of char(F_q).
u64 saygi_count(u64 q, u32 m, u32 k);

/// phi_q(x^m - 1) / q^k as an exact rational in lowest terms. Decimal
/// rendering happens only at the presentation layer.
Rational lower_bound(const FqCtx& fq, u32 m, u32 k, const Factorization& fact);

/// Bound rows for every k in [0, m].
std::vector<BoundEvaluation> evaluate_bounds(const FqCtx& fq, u32 m, const Factorization& fact);

/// Existence guarantees from the divisibility, gcd and Reis conditions plus
/// the unconditional k in {0, 1, m-1, m}. All divisibility tests go through
/// modular exponentiation, so the verdict stays valid far beyond census range.
ExistenceVerdict existence_verdict(u64 q, u32 m);

/// Smallest-index element with classify(.).k == k, or nullopt after
/// exhausting the field.
std::optional<FqmElem> find_k_normal(const TowerCtx& ctx, u32 k, const Factorization& fact,
                                     u64 size_guard);

/// Elements that are simultaneously 0-normal and of exact multiplicative
/// order target_order. target_order must divide q^m - 1. The value
/// (q^m - 1)/(q - 1) realizes "(q-1)-primitive normal"; q^m - 1 realizes
/// "primitive normal".
std::optional<FqmElem> find_order_normal(const TowerCtx& ctx, u64 target_order,
                                         const Factorization& fact);
u64 count_order_normal(const TowerCtx& ctx, u64 target_order, const Factorization& fact);

/// Census cap: KNORMAL_SIZE_GUARD from the environment, else 2^48.
u64 census_size_guard();

/**
 * Exhaustive census: classifies every element, accumulates per-k counts and
 * the primitive / (q-1)-primitive normal footers, and cross-checks the counts
 * against the divisor-sum formula entrywise (FormulaCensusMismatch on any
 * difference: the two oracles are independent). The index range is split
 * across workers with commutative merging, so the result is independent of
 * the worker count. Verify mode additionally runs all four k-methods on every
 * element of small fields (q^m <= 4096) and on a deterministic 1000-element
 * sample of larger ones.
 */
CensusReport census(const TowerCtx& ctx, const Factorization& fact, u32 workers = 1,
                    ClassifyMode mode = ClassifyMode::Fast, u64 size_guard = census_size_guard());

}  // namespace knormal

#endif
