#include "doctest.h"
#include "test_util.hpp"

using namespace knormal;

namespace {

std::vector<FqElem> random_coords(const TowerCtx& ctx, SplitMix64& rng) {
    std::vector<FqElem> c;
    for (u32 i = 0; i < ctx.m(); ++i) c.push_back(ctx.fq().from_index(rng.next() % ctx.q()));
    return c;
}

// Product in normal coordinates via the multiplication table:
// a^{q^i} a^{q^j} = shift^i applied to row (j - i) mod m.
std::vector<FqElem> table_mul(const TowerCtx& ctx, const MultTable& mt,
                              const std::vector<FqElem>& x, const std::vector<FqElem>& y) {
    const FqCtx& fq = ctx.fq();
    const u32 m = ctx.m();
    std::vector<FqElem> out(m, fq.zero());
    for (u32 i = 0; i < m; ++i) {
        if (fq.is_zero(x[i])) continue;
        for (u32 j = 0; j < m; ++j) {
            if (fq.is_zero(y[j])) continue;
            FqElem c = fq.mul(x[i], y[j]);
            const auto& row = mt.t[(j + m - i) % m];
            for (u32 l = 0; l < m; ++l)
                out[(l + i) % m] = fq.add(out[(l + i) % m], fq.mul(c, row[l]));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("build_normal_basis accepts exactly the normal elements") {
    TowerCtx t8 = kt::f8_tower();
    u32 accepted = 0;
    for (u64 i = 0; i < 8; ++i) {
        FqmElem a = t8.from_index(i);
        u32 k = k_via_span(t8, a);
        if (k == 0) {
            CHECK_NOTHROW(build_normal_basis(t8, a));
            ++accepted;
        } else {
            try {
                build_normal_basis(t8, a);
                FAIL("expected NotNormal");
            } catch (const NotNormal& e) {
                CHECK(e.k == k);
            }
        }
    }
    CHECK(accepted == 3);

    try {
        build_normal_basis(t8, t8.one());
        FAIL("expected NotNormal");
    } catch (const NotNormal& e) {
        CHECK(e.k == 2);  // m - 1
    }
    try {
        build_normal_basis(t8, t8.zero());
        FAIL("expected NotNormal");
    } catch (const NotNormal& e) {
        CHECK(e.k == 3);  // m
    }
}

TEST_CASE("coordinate round trip and linearity") {
    TowerCtx t = kt::tower_q(9, 5);
    auto fact = kt::xm1_fact(t);
    auto gen = find_k_normal(t, 0, fact, census_size_guard());
    REQUIRE(gen.has_value());
    NormalBasis nb = build_normal_basis(t, *gen);

    CHECK(to_normal_coords(t, nb, nb.generator)[0] == t.fq().one());
    for (u32 i = 1; i < t.m(); ++i) CHECK(t.fq().is_zero(to_normal_coords(t, nb, nb.generator)[i]));

    SplitMix64 rng(21);
    for (int i = 0; i < 1000; ++i) {
        FqmElem b = kt::random_element(t, rng);
        CHECK(from_normal_coords(t, nb, to_normal_coords(t, nb, b)) == b);
    }
    for (int i = 0; i < 100; ++i) {
        FqmElem b = kt::random_element(t, rng);
        FqmElem c = kt::random_element(t, rng);
        auto sum = to_normal_coords(t, nb, t.add(b, c));
        auto xb = to_normal_coords(t, nb, b);
        auto xc = to_normal_coords(t, nb, c);
        for (u32 j = 0; j < t.m(); ++j) CHECK(sum[j] == t.fq().add(xb[j], xc[j]));
    }
}

TEST_CASE("frobenius in normal coordinates is the right cyclic shift") {
    TowerCtx t8 = kt::f8_tower();
    FqCtx f2 = t8.fq();
    std::vector<FqElem> c{f2.from_index(1), f2.from_index(0), f2.from_index(1)};
    auto shifted = frobenius_in_normal(c);
    CHECK(shifted == std::vector<FqElem>{f2.from_index(1), f2.from_index(1), f2.from_index(0)});

    auto back = c;
    for (u32 i = 0; i < 3; ++i) back = frobenius_in_normal(back);
    CHECK(back == c);  // m-fold shift is the identity
}

TEST_CASE("commuting diagram: shift then rebuild equals frobenius") {
    for (auto [q, m] : std::vector<std::pair<u64, u32>>{{2, 3}, {9, 5}}) {
        TowerCtx t = kt::tower_q(q, m);
        auto fact = kt::xm1_fact(t);
        auto gen = find_k_normal(t, 0, fact, census_size_guard());
        REQUIRE(gen.has_value());
        NormalBasis nb = build_normal_basis(t, *gen);
        SplitMix64 rng(22);
        for (int i = 0; i < 1000; ++i) {
            auto coords = random_coords(t, rng);
            FqmElem via_shift = from_normal_coords(t, nb, frobenius_in_normal(coords));
            FqmElem via_frob = t.frobenius(from_normal_coords(t, nb, coords));
            CHECK(via_shift == via_frob);
        }
    }
}

TEST_CASE("multiplication table") {
    TowerCtx t8 = kt::f8_tower();
    NormalBasis nb = build_normal_basis(t8, t8.from_index(3));
    MultTable mt = mult_table(t8, nb);

    // Row i expands generator * generator^{q^i} exactly.
    FqmElem conj = nb.generator;
    for (u32 i = 0; i < t8.m(); ++i) {
        if (i > 0) conj = t8.frobenius(conj);
        CHECK(from_normal_coords(t8, nb, mt.t[i]) == t8.mul(nb.generator, conj));
    }
    CHECK(mt.density >= t8.m());  // every row is nonzero

    MultTable again = mult_table(t8, build_normal_basis(t8, t8.from_index(3)));
    CHECK(again.density == mt.density);  // deterministic construction

    // Multiplying through normal coordinates agrees with tower multiplication.
    SplitMix64 rng(23);
    for (int i = 0; i < 200; ++i) {
        auto x = random_coords(t8, rng);
        auto y = random_coords(t8, rng);
        FqmElem expect = t8.mul(from_normal_coords(t8, nb, x), from_normal_coords(t8, nb, y));
        CHECK(from_normal_coords(t8, nb, table_mul(t8, mt, x, y)) == expect);
    }
}

TEST_CASE("shift is an algebra automorphism under the table product") {
    TowerCtx t = kt::tower_q(3, 4);
    auto fact = kt::xm1_fact(t);
    auto gen = find_k_normal(t, 0, fact, census_size_guard());
    REQUIRE(gen.has_value());
    NormalBasis nb = build_normal_basis(t, *gen);
    MultTable mt = mult_table(t, nb);
    SplitMix64 rng(24);
    for (int i = 0; i < 200; ++i) {
        auto x = random_coords(t, rng);
        auto y = random_coords(t, rng);
        auto lhs = frobenius_in_normal(table_mul(t, mt, x, y));
        auto rhs = table_mul(t, mt, frobenius_in_normal(x), frobenius_in_normal(y));
        CHECK(lhs == rhs);
    }
}
