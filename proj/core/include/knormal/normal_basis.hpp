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

#ifndef KNORMAL_NORMAL_BASIS_HPP
#define KNORMAL_NORMAL_BASIS_HPP

#include "knormal/knormal.hpp"

namespace knormal {

/// The basis {a, a^q, ..., a^{q^{m-1}}} spanned by a 0-normal element a.
/// basis_matrix is m x m over F_q, row-major, column i holding the
/// coordinates of a^{q^i}; inverse_matrix is its inverse.
struct NormalBasis {
    FqmElem generator;
    std::vector<std::vector<FqElem>> basis_matrix;
    std::vector<std::vector<FqElem>> inverse_matrix;
};

/// Multiplication table of a normal basis: a * a^{q^i} = sum_j t[i][j] a^{q^j}.
/// density counts the nonzero entries, the standard complexity measure of a
/// normal basis. Reported, never asserted against classical lower bounds.
struct MultTable {
    std::vector<std::vector<FqElem>> t;
    u64 density = 0;
};

/// Assembles and inverts the conjugate basis matrix. Throws NotNormal(k)
/// with the actual k when the element is not 0-normal.
NormalBasis build_normal_basis(const TowerCtx& ctx, const FqmElem& a);

/// Mutually inverse linear maps between tower coordinates and normal-basis
/// coordinates.
std::vector<FqElem> to_normal_coords(const TowerCtx& ctx, const NormalBasis& nb, const FqmElem& b);
FqmElem from_normal_coords(const TowerCtx& ctx, const NormalBasis& nb,
                           const std::vector<FqElem>& coords);

/// x -> x^q in normal coordinates: a right cyclic shift by one position.
/// Commutes with the tower Frobenius through from_normal_coords.
std::vector<FqElem> frobenius_in_normal(std::vector<FqElem> coords);

MultTable mult_table(const TowerCtx& ctx, const NormalBasis& nb);

}  // namespace knormal

#endif
