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

#include "knormal/normal_basis.hpp"

#include <algorithm>

namespace knormal {

namespace {

using Matrix = std::vector<std::vector<FqElem>>;

Matrix identity(const FqCtx& fq, u32 m) {
    Matrix id(m, std::vector<FqElem>(m, fq.zero()));
    for (u32 i = 0; i < m; ++i) id[i][i] = fq.one();
    return id;
}

Matrix invert(const FqCtx& fq, Matrix a) {
    const u32 m = static_cast<u32>(a.size());
    Matrix inv = identity(fq, m);
    for (u32 col = 0; col < m; ++col) {
        u32 sel = m;
        for (u32 r = col; r < m; ++r) {
            if (!fq.is_zero(a[r][col])) {
                sel = r;
                break;
            }
        }
        if (sel == m) throw InternalInconsistency("conjugate matrix of a normal element is singular");
        std::swap(a[col], a[sel]);
        std::swap(inv[col], inv[sel]);
        FqElem piv = fq.inv(a[col][col]);
        for (u32 j = 0; j < m; ++j) {
            a[col][j] = fq.mul(a[col][j], piv);
            inv[col][j] = fq.mul(inv[col][j], piv);
        }
        for (u32 r = 0; r < m; ++r) {
            if (r == col || fq.is_zero(a[r][col])) continue;
            FqElem f = a[r][col];
            for (u32 j = 0; j < m; ++j) {
                a[r][j] = fq.sub(a[r][j], fq.mul(f, a[col][j]));
                inv[r][j] = fq.sub(inv[r][j], fq.mul(f, inv[col][j]));
            }
        }
    }
    return inv;
}

std::vector<FqElem> matvec(const FqCtx& fq, const Matrix& m, const std::vector<FqElem>& v) {
    std::vector<FqElem> out(m.size(), fq.zero());
    for (size_t r = 0; r < m.size(); ++r)
        for (size_t c = 0; c < v.size(); ++c)
            out[r] = fq.add(out[r], fq.mul(m[r][c], v[c]));
    return out;
}

}  // namespace

NormalBasis build_normal_basis(const TowerCtx& ctx, const FqmElem& a) {
    u32 k = k_via_span(ctx, a);
    if (k != 0) throw NotNormal(k);
    const u32 m = ctx.m();
    NormalBasis nb;
    nb.generator = a;
    nb.basis_matrix.assign(m, std::vector<FqElem>(m, ctx.fq().zero()));
    FqmElem conj = a;
    for (u32 i = 0; i < m; ++i) {
        if (i > 0) conj = ctx.frobenius(conj);
        for (u32 r = 0; r < m; ++r) nb.basis_matrix[r][i] = ctx.coordinate(conj, r);
    }
    nb.inverse_matrix = invert(ctx.fq(), nb.basis_matrix);
    return nb;
}

std::vector<FqElem> to_normal_coords(const TowerCtx& ctx, const NormalBasis& nb, const FqmElem& b) {
    std::vector<FqElem> coords;
    coords.reserve(ctx.m());
    for (u32 i = 0; i < ctx.m(); ++i) coords.push_back(ctx.coordinate(b, i));
    return matvec(ctx.fq(), nb.inverse_matrix, coords);
}

FqmElem from_normal_coords(const TowerCtx& ctx, const NormalBasis& nb,
                           const std::vector<FqElem>& coords) {
    if (coords.size() != ctx.m()) throw PreconditionViolated("normal coordinates must have length m");
    return ctx.from_coordinates(matvec(ctx.fq(), nb.basis_matrix, coords));
}

std::vector<FqElem> frobenius_in_normal(std::vector<FqElem> coords) {
    if (!coords.empty()) std::rotate(coords.begin(), coords.end() - 1, coords.end());
    return coords;
}

MultTable mult_table(const TowerCtx& ctx, const NormalBasis& nb) {
    const u32 m = ctx.m();
    MultTable t;
    t.t.reserve(m);
    FqmElem conj = nb.generator;
    for (u32 i = 0; i < m; ++i) {
        if (i > 0) conj = ctx.frobenius(conj);
        auto row = to_normal_coords(ctx, nb, ctx.mul(nb.generator, conj));
        for (const auto& e : row)
            if (!ctx.fq().is_zero(e)) ++t.density;
        t.t.push_back(std::move(row));
    }
    return t;
}

}  // namespace knormal
