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

#ifndef KNORMAL_POLY_HPP
#define KNORMAL_POLY_HPP

#include <concepts>
#include <utility>
#include <vector>

#include "knormal/common.hpp"
#include "knormal/tower.hpp"

namespace knormal {

// Lightweight field handles so the same dense-polynomial code runs over F_p
// (modulus search), F_q (factoring x^m - 1) and F_{q^m} (the gcd and rank
// characterizations of k-normality).

struct FpView {
    u64 p;
    using Elem = u64;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem add(Elem a, Elem b) const {
        u64 r = a + b;
        return r >= p ? r - p : r;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
    Elem neg(Elem a) const { return a ? p - a : 0; }
    Elem mul(Elem a, Elem b) const { return mulmod_u64(a, b, p); }
    Elem inv(Elem a) const {
        if (!a) throw DivisionByZero();
        return powmod_u64(a, p - 2, p);
    }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    u64 size() const { return p; }
    u64 index_of(Elem a) const { return a; }
    Elem from_index(u64 i) const { return i; }
};

struct FqView {
    const FqCtx* k;
    using Elem = FqElem;
    Elem zero() const { return k->zero(); }
    Elem one() const { return k->one(); }
    Elem add(const Elem& a, const Elem& b) const { return k->add(a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return k->sub(a, b); }
    Elem neg(const Elem& a) const { return k->neg(a); }
    Elem mul(const Elem& a, const Elem& b) const { return k->mul(a, b); }
    Elem inv(const Elem& a) const { return k->inv(a); }
    bool is_zero(const Elem& a) const { return k->is_zero(a); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    u64 size() const { return k->q(); }
    u64 index_of(const Elem& a) const { return k->index_of(a); }
    Elem from_index(u64 i) const { return k->from_index(i); }
};

struct FqmView {
    const TowerCtx* t;
    using Elem = FqmElem;
    Elem zero() const { return t->zero(); }
    Elem one() const { return t->one(); }
    Elem add(const Elem& a, const Elem& b) const { return t->add(a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return t->sub(a, b); }
    Elem neg(const Elem& a) const { return t->neg(a); }
    Elem mul(const Elem& a, const Elem& b) const { return t->mul(a, b); }
    Elem inv(const Elem& a) const { return t->inv(a); }
    bool is_zero(const Elem& a) const { return t->is_zero(a); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    u64 size() const { return t->field_size(); }
    u64 index_of(const Elem& a) const { return t->index_of(a); }
    Elem from_index(u64 i) const { return t->from_index(i); }
};

template <class F>
concept FieldView = requires(const F f, const typename F::Elem a) {
    { f.zero() } -> std::convertible_to<typename F::Elem>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
    { f.size() } -> std::convertible_to<u64>;
};

/// Dense polynomial, constant term first. Invariant: the last coefficient is
/// nonzero; the zero polynomial is the empty vector. The degree of the zero
/// polynomial is the sentinel kZeroPolyDeg, never used in degree arithmetic.
template <FieldView F>
struct Poly {
    std::vector<typename F::Elem> c;
};

using PolyFp = Poly<FpView>;
using PolyFq = Poly<FqView>;
using PolyFqm = Poly<FqmView>;

inline constexpr int kZeroPolyDeg = -1;

template <FieldView F>
int poly_deg(const Poly<F>& a) {
    return a.c.empty() ? kZeroPolyDeg : static_cast<int>(a.c.size()) - 1;
}

template <FieldView F>
bool poly_is_zero(const Poly<F>& a) {
    return a.c.empty();
}

template <FieldView F>
void poly_trim(const F& fld, Poly<F>& a) {
    while (!a.c.empty() && fld.is_zero(a.c.back())) a.c.pop_back();
}

template <FieldView F>
Poly<F> poly_zero() {
    return {};
}

template <FieldView F>
Poly<F> poly_one(const F& fld) {
    return Poly<F>{{fld.one()}};
}

template <FieldView F>
Poly<F> poly_x(const F& fld) {
    return Poly<F>{{fld.zero(), fld.one()}};
}

/// x^n + c0 convenience (n >= 1).
template <FieldView F>
Poly<F> poly_xn_plus_const(const F& fld, u32 n, const typename F::Elem& c0) {
    Poly<F> r;
    r.c.assign(n + 1, fld.zero());
    r.c[0] = c0;
    r.c[n] = fld.one();
    poly_trim(fld, r);
    return r;
}

template <FieldView F>
Poly<F> poly_constant(const F& fld, const typename F::Elem& c0) {
    Poly<F> r{{c0}};
    poly_trim(fld, r);
    return r;
}

template <FieldView F>
bool poly_eq(const F& fld, const Poly<F>& a, const Poly<F>& b) {
    if (a.c.size() != b.c.size()) return false;
    for (size_t i = 0; i < a.c.size(); ++i)
        if (!fld.eq(a.c[i], b.c[i])) return false;
    return true;
}

template <FieldView F>
Poly<F> poly_add(const F& fld, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r;
    size_t n = std::max(a.c.size(), b.c.size());
    r.c.assign(n, fld.zero());
    for (size_t i = 0; i < n; ++i) {
        if (i < a.c.size()) r.c[i] = a.c[i];
        if (i < b.c.size()) r.c[i] = fld.add(r.c[i], b.c[i]);
    }
    poly_trim(fld, r);
    return r;
}

template <FieldView F>
Poly<F> poly_sub(const F& fld, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r;
    size_t n = std::max(a.c.size(), b.c.size());
    r.c.assign(n, fld.zero());
    for (size_t i = 0; i < n; ++i) {
        if (i < a.c.size()) r.c[i] = a.c[i];
        if (i < b.c.size()) r.c[i] = fld.sub(r.c[i], b.c[i]);
    }
    poly_trim(fld, r);
    return r;
}

template <FieldView F>
Poly<F> poly_scale(const F& fld, const Poly<F>& a, const typename F::Elem& c) {
    if (fld.is_zero(c)) return {};
    Poly<F> r = a;
    for (auto& x : r.c) x = fld.mul(x, c);
    return r;
}

template <FieldView F>
Poly<F> poly_mul(const F& fld, const Poly<F>& a, const Poly<F>& b) {
    if (a.c.empty() || b.c.empty()) return {};
    Poly<F> r;
    r.c.assign(a.c.size() + b.c.size() - 1, fld.zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (fld.is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = fld.add(r.c[i + j], fld.mul(a.c[i], b.c[j]));
    }
    poly_trim(fld, r);
    return r;
}

/// Quotient and remainder with deg r < deg b. Throws DivisionByZero on b = 0.
template <FieldView F>
std::pair<Poly<F>, Poly<F>> poly_divmod(const F& fld, const Poly<F>& a, const Poly<F>& b) {
    if (b.c.empty()) throw DivisionByZero();
    Poly<F> rem = a, quot;
    if (a.c.size() < b.c.size()) return {quot, rem};
    quot.c.assign(a.c.size() - b.c.size() + 1, fld.zero());
    auto lead_inv = fld.inv(b.c.back());
    auto db = static_cast<std::ptrdiff_t>(b.c.size()) - 1;
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(rem.c.size()) - 1; i >= db; --i) {
        if (fld.is_zero(rem.c[i])) continue;
        auto coef = fld.mul(rem.c[i], lead_inv);
        size_t shift = static_cast<size_t>(i - db);
        quot.c[shift] = coef;
        for (size_t j = 0; j < b.c.size(); ++j)
            rem.c[shift + j] = fld.sub(rem.c[shift + j], fld.mul(coef, b.c[j]));
    }
    poly_trim(fld, quot);
    poly_trim(fld, rem);
    return {quot, rem};
}

template <FieldView F>
Poly<F> poly_mod(const F& fld, const Poly<F>& a, const Poly<F>& b) {
    return poly_divmod(fld, a, b).second;
}

template <FieldView F>
Poly<F> poly_make_monic(const F& fld, const Poly<F>& a) {
    if (a.c.empty()) return a;
    if (fld.eq(a.c.back(), fld.one())) return a;
    return poly_scale(fld, a, fld.inv(a.c.back()));
}

/// Monic gcd; gcd(f, 0) is the monic normalization of f.
template <FieldView F>
Poly<F> poly_gcd(const F& fld, Poly<F> a, Poly<F> b) {
    while (!b.c.empty()) {
        auto r = poly_mod(fld, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_make_monic(fld, a);
}

/// base^e mod modulus by square-and-multiply.
template <FieldView F>
Poly<F> poly_powmod(const F& fld, Poly<F> base, u64 e, const Poly<F>& modulus) {
    base = poly_mod(fld, base, modulus);
    Poly<F> r = poly_mod(fld, poly_one(fld), modulus);
    while (e) {
        if (e & 1) r = poly_mod(fld, poly_mul(fld, r, base), modulus);
        base = poly_mod(fld, poly_mul(fld, base, base), modulus);
        e >>= 1;
    }
    return r;
}

/// Small-exponent plain power (no modulus).
template <FieldView F>
Poly<F> poly_pow(const F& fld, const Poly<F>& base, u64 e) {
    Poly<F> r = poly_one(fld);
    for (u64 i = 0; i < e; ++i) r = poly_mul(fld, r, base);
    return r;
}

template <FieldView F>
typename F::Elem poly_eval(const F& fld, const Poly<F>& a, const typename F::Elem& x) {
    auto r = fld.zero();
    for (size_t i = a.c.size(); i-- > 0;) r = fld.add(fld.mul(r, x), a.c[i]);
    return r;
}

/**
 * Deterministic irreducibility test for f of degree n over the view's field
 * of size q: f is irreducible iff x^{q^n} = x (mod f) and
 * gcd(x^{q^{n/l}} - x, f) = 1 for every prime l dividing n. The iterated
 * Frobenius images x^{q^j} are built by successive exponent-q powerings, so
 * no exponent ever exceeds 64 bits.
 */
template <FieldView F>
bool is_irreducible(const F& fld, const Poly<F>& f) {
    int n = poly_deg(f);
    if (n < 1) throw PreconditionViolated("is_irreducible: degree must be >= 1");
    if (n == 1) return true;
    u64 q = fld.size();
    std::vector<Poly<F>> frob(n + 1);  // frob[j] = x^{q^j} mod f
    frob[0] = poly_mod(fld, poly_x(fld), f);
    for (int j = 1; j <= n; ++j) frob[j] = poly_powmod(fld, frob[j - 1], q, f);
    auto x = poly_mod(fld, poly_x(fld), f);
    if (!poly_eq(fld, frob[n], x)) return false;
    for (u64 l : prime_divisors(static_cast<u64>(n))) {
        auto diff = poly_sub(fld, frob[n / l], x);
        auto g = poly_gcd(fld, diff, f);
        if (poly_deg(g) != 0) return false;
    }
    return true;
}

/// Canonical index list (constant term first), the serialized form.
template <FieldView F>
std::vector<u64> poly_indices(const F& fld, const Poly<F>& a) {
    std::vector<u64> r;
    r.reserve(a.c.size());
    for (const auto& e : a.c) r.push_back(fld.index_of(e));
    return r;
}

template <FieldView F>
Poly<F> poly_from_indices(const F& fld, const std::vector<u64>& idx) {
    Poly<F> r;
    r.c.reserve(idx.size());
    for (u64 i : idx) {
        if (i >= fld.size()) throw PreconditionViolated("coefficient index out of range");
        r.c.push_back(fld.from_index(i));
    }
    poly_trim(fld, r);
    return r;
}

}  // namespace knormal

#endif
