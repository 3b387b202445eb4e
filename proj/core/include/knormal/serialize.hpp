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

#ifndef KNORMAL_SERIALIZE_HPP
#define KNORMAL_SERIALIZE_HPP

#include <string>
#include <string_view>

#include "knormal/knormal.hpp"
#include "knormal/normal_basis.hpp"

namespace knormal {

// Polynomials serialize as "[i0,i1,...,id]": the coefficient indices,
// constant term first, last entry nonzero.

std::string poly_serialize(const std::vector<u64>& indices);
std::vector<u64> poly_parse(std::string_view text);

/// Human form, highest power first, coefficients as canonical indices:
/// "x^4+x^3+x^2+x+1", "x^2+4x+1", "x+1", "0".
std::string poly_pretty(const std::vector<u64>& indices);

/// "(x+1)^2 * (x^4+x^3+x^2+x+1)^2"
std::string factorization_pretty(const FqCtx& fq, const Factorization& fact);
std::string factorization_to_json(const FqCtx& fq, const Factorization& fact);

/**
 * Decimal rendering of an exact bound num/den. Integers print bare; values
 * whose decimal expansion terminates within three places print exactly
 * (1.875, 7.5, 3.75); everything else rounds half-up to two places with both
 * digits kept (5688.89, 632.10). Rounding is presentation only; comparisons
 * always use the exact rational.
 */
std::string render_bound(u64 num, u64 den);

std::string tower_to_json(const TowerDesc& desc);
TowerDesc tower_from_json(const std::string& text);

std::string exist_tag_name(ExistTag tag);

std::string existence_to_json(const ExistenceVerdict& v);
std::string existence_to_markdown(const ExistenceVerdict& v);

std::string bounds_to_json(const std::vector<BoundEvaluation>& rows);
std::string bounds_to_markdown(const std::vector<BoundEvaluation>& rows);
std::string bounds_to_csv(const std::vector<BoundEvaluation>& rows);

/// Census serialization. Timing and worker fields are volatile (they change
/// run to run), so they are emitted only on request; the default output is
/// byte-deterministic for a given (config, seed).
std::string census_to_json(const CensusReport& rep, bool include_timings = false);
CensusReport census_from_json(const std::string& text);
std::string census_to_markdown(const CensusReport& rep);
std::string census_to_csv(const CensusReport& rep);

std::string normal_basis_to_json(const TowerCtx& ctx, const NormalBasis& nb, const MultTable& mt);
std::string normal_basis_to_markdown(const TowerCtx& ctx, const NormalBasis& nb,
                                     const MultTable& mt);

}  // namespace knormal

#endif
