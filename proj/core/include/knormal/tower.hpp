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

#ifndef KNORMAL_TOWER_HPP
#define KNORMAL_TOWER_HPP

#include <optional>
#include <span>
#include <vector>

#include "knormal/common.hpp"
#include "knormal/int_factor.hpp"

namespace knormal {

/// Element of the prime field F_p, a value in [0, p).
using FpElem = u64;

/// Element of F_q = F_p[y]/(f): s coordinates w.r.t. the basis {1, y, ..., y^{s-1}},
/// each an FpElem. Always exactly s digits, canonical (reduced mod p).
struct FqElem {
    std::vector<u64> d;
    bool operator==(const FqElem&) const = default;
};

/// Element of F_{q^m} = F_q[z]/(g): m coordinates w.r.t. {1, z, ..., z^{m-1}},
/// each an FqElem, stored flattened as m*s base-p digits. Coordinate i occupies
/// digits [i*s, (i+1)*s).
struct FqmElem {
    std::vector<u64> d;
    bool operator==(const FqmElem&) const = default;
};

/**
 * The base field F_q = F_p[y]/(f) of the tower.
 *
 * Immutable after construction and safely shareable across threads. All
 * operations are pure functions of (ctx, inputs). Span overloads operate on
 * raw digit ranges of width s and never allocate; value overloads wrap them.
 */
class FqCtx {
   public:
    /// Builds F_q. When `f` is omitted, scans monic degree-s polynomials over
    /// F_p in canonical index order starting at `seed` (wrapping) and takes
    /// the first irreducible one. `f` is given constant-term-first with the
    /// leading coefficient 1 included (length s+1).
    FqCtx(u64 p, u32 s, const std::optional<std::vector<u64>>& f, u64 seed);

    u64 p() const { return p_; }
    u32 s() const { return s_; }
    u64 q() const { return q_; }
    u64 seed() const { return seed_; }
    const std::vector<u64>& modulus() const { return f_; }

    // F_p scalar arithmetic.
    u64 p_add(u64 a, u64 b) const {
        u64 r = a + b;
        return r >= p_ ? r - p_ : r;
    }
    u64 p_sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
    u64 p_neg(u64 a) const { return a ? p_ - a : 0; }
    u64 p_mul(u64 a, u64 b) const { return static_cast<u64>(u128(a) * b % p_); }
    u64 p_pow(u64 a, u64 e) const;
    u64 p_inv(u64 a) const;

    // F_q span kernels; all spans have width s and must not alias the output
    // unless noted.
    void add(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const;
    void sub(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const;
    void neg(std::span<const u64> a, std::span<u64> out) const;
    void mul(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const;
    /// acc += a*b; acc may not alias a or b.
    void addmul(std::span<u64> acc, std::span<const u64> a, std::span<const u64> b) const;
    void pow(std::span<const u64> a, u64 e, std::span<u64> out) const;
    void inv(std::span<const u64> a, std::span<u64> out) const;
    bool is_zero(std::span<const u64> a) const;
    void set_zero(std::span<u64> a) const;
    void set_one(std::span<u64> a) const;

    // Value API.
    FqElem zero() const { return FqElem{std::vector<u64>(s_, 0)}; }
    FqElem one() const;
    FqElem add(const FqElem& a, const FqElem& b) const;
    FqElem sub(const FqElem& a, const FqElem& b) const;
    FqElem neg(const FqElem& a) const;
    FqElem mul(const FqElem& a, const FqElem& b) const;
    FqElem inv(const FqElem& a) const;
    FqElem pow(const FqElem& a, u64 e) const;
    bool is_zero(const FqElem& a) const { return is_zero(std::span<const u64>(a.d)); }

    /// Canonical index of an element: sum of digit_j * p^j (little-endian).
    u64 index_of(const FqElem& a) const { return index_of(std::span<const u64>(a.d)); }
    u64 index_of(std::span<const u64> a) const;
    FqElem from_index(u64 idx) const;
    void decode_index(u64 idx, std::span<u64> out) const;

   private:
    u64 p_ = 0;
    u32 s_ = 0;
    u64 q_ = 0;
    u64 seed_ = 0;
    std::vector<u64> f_;    // monic, length s+1, constant first
    std::vector<u64> red_;  // (s-1) rows of s digits: y^{s+j} mod f
};

/// Serializable description of a tower: {p, s, m, f, g, seed} with the moduli
/// as canonical coefficient-index lists (constant term first).
struct TowerDesc {
    u64 p = 0;
    u32 s = 0;
    u32 m = 0;
    std::vector<u64> f;
    std::vector<u64> g;
    u64 seed = 0;
    bool operator==(const TowerDesc&) const = default;
};

/**
 * The full tower F_p in F_q = F_p[y]/(f) in F_{q^m} = F_q[z]/(g).
 *
 * Carries the cached m x m Frobenius matrix over F_q representing x -> x^q,
 * so conjugate generation is a matrix-vector product instead of a powering.
 * Immutable after construction; all operations pure; enumeration ranges may
 * be processed by independent workers.
 */
class TowerCtx {
   public:
    /// Builds F_{q^m} over the given base. When `g` is omitted, scans monic
    /// degree-m polynomials over F_q in canonical index order starting at
    /// `seed`. `g` is given as F_q elements, constant term first, length m+1.
    TowerCtx(FqCtx base, u32 m, const std::optional<std::vector<FqElem>>& g, u64 seed);

    const FqCtx& fq() const { return fq_; }
    u64 p() const { return fq_.p(); }
    u32 s() const { return fq_.s(); }
    u64 q() const { return fq_.q(); }
    u32 m() const { return m_; }
    u64 field_size() const { return field_size_; }
    u64 seed() const { return seed_; }
    /// Words per element: m*s.
    u32 width() const { return m_ * fq_.s(); }
    const std::vector<FqElem>& modulus() const { return g_; }
    const IntFactorization& unit_group_factors() const { return order_factors_; }
    TowerDesc description() const;

    // Span kernels, width() words each unless noted.
    void add(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const;
    void sub(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const;
    void neg(std::span<const u64> a, std::span<u64> out) const;
    /// out = a*b mod g; out must not alias a or b.
    void mul(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const;
    /// out = in^q via the cached Frobenius matrix; out must not alias in.
    void frobenius(std::span<const u64> in, std::span<u64> out) const;
    void pow(std::span<const u64> a, u64 e, std::span<u64> out) const;
    void inv(std::span<const u64> a, std::span<u64> out) const;
    /// out = c * a with c in F_q (an s-word span).
    void scalar_mul(std::span<const u64> c, std::span<const u64> a, std::span<u64> out) const;
    bool is_zero(std::span<const u64> a) const;
    bool is_one(std::span<const u64> a) const;
    void set_zero(std::span<u64> a) const;
    void set_one(std::span<u64> a) const;
    u64 index_of(std::span<const u64> a) const;
    void decode_index(u64 idx, std::span<u64> out) const;

    // Value API.
    FqmElem zero() const { return FqmElem{std::vector<u64>(width(), 0)}; }
    FqmElem one() const;
    FqmElem add(const FqmElem& a, const FqmElem& b) const;
    FqmElem sub(const FqmElem& a, const FqmElem& b) const;
    FqmElem neg(const FqmElem& a) const;
    FqmElem mul(const FqmElem& a, const FqmElem& b) const;
    FqmElem inv(const FqmElem& a) const;
    FqmElem pow(const FqmElem& a, u64 e) const;
    FqmElem frobenius(const FqmElem& a) const;
    bool is_zero(const FqmElem& a) const { return is_zero(std::span<const u64>(a.d)); }
    bool is_one(const FqmElem& a) const { return is_one(std::span<const u64>(a.d)); }
    u64 index_of(const FqmElem& a) const { return index_of(std::span<const u64>(a.d)); }
    FqmElem from_index(u64 idx) const;

    /// Coordinate i of the element w.r.t. {1, z, ..., z^{m-1}}, as an FqElem.
    FqElem coordinate(const FqmElem& a, u32 i) const;
    FqmElem from_coordinates(const std::vector<FqElem>& coords) const;

   private:
    FqCtx fq_;
    u32 m_ = 0;
    u64 field_size_ = 0;
    u64 seed_ = 0;
    std::vector<FqElem> g_;   // monic, length m+1
    std::vector<u64> gred_;   // (m-1) rows of width() digits: z^{m+j} mod g
    std::vector<u64> frob_;   // column-major m x m over F_q: coords of z^{iq}
    IntFactorization order_factors_;  // factorization of q^m - 1

    void check_frobenius_order() const;
};

/// Convenience constructor mirroring the tower parameters: moduli are given
/// as canonical index lists (constant term first, monic leading 1 included)
/// or omitted for a deterministic seeded scan.
TowerCtx build_tower(u64 p, u32 s, u32 m, const std::optional<std::vector<u64>>& f_indices,
                     const std::optional<std::vector<u64>>& g_indices, u64 seed);

/// Smallest N >= 1 with a^N = 1. Throws ZeroElement on 0.
u64 multiplicative_order(const TowerCtx& ctx, const FqmElem& a);

/// Smallest-index element of multiplicative order q^m - 1.
FqmElem find_primitive_element(const TowerCtx& ctx);

/// Ordered stream of the elements with canonical index in [lo, hi).
class ElementRange {
   public:
    ElementRange(const TowerCtx& ctx, u64 lo, u64 hi);

    class iterator {
       public:
        iterator(const TowerCtx* ctx, u64 pos);
        const FqmElem& operator*() const { return cur_; }
        iterator& operator++();
        bool operator!=(const iterator& o) const { return pos_ != o.pos_; }

       private:
        const TowerCtx* ctx_;
        u64 pos_;
        FqmElem cur_;
    };

    iterator begin() const { return iterator(ctx_, lo_); }
    iterator end() const { return iterator(ctx_, hi_); }
    u64 size() const { return hi_ - lo_; }

   private:
    const TowerCtx* ctx_;
    u64 lo_, hi_;
};

inline ElementRange enumerate_elements(const TowerCtx& ctx, u64 lo, u64 hi) {
    return ElementRange(ctx, lo, hi);
}

}  // namespace knormal

#endif
