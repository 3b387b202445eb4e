#include <cstdlib>

#include "doctest.h"
#include "test_util.hpp"

using namespace knormal;

TEST_CASE("module action basics") {
    TowerCtx t8 = kt::f8_tower();
    FqView fv{&t8.fq()};
    PolyFq x = poly_x(fv);
    PolyFq onepx = poly_from_indices(fv, {1, 1});
    SplitMix64 rng(11);
    for (int i = 0; i < 30; ++i) {
        FqmElem a = kt::random_element(t8, rng);
        CHECK(apply_module_action(t8, x, a) == t8.frobenius(a));
        CHECK(t8.is_zero(apply_module_action(t8, xm_minus_1(t8.fq(), 3), a)));
    }
    FqmElem t = t8.from_index(2);
    CHECK(t8.index_of(apply_module_action(t8, onepx, t)) == 6);  // t + t^2
}

TEST_CASE("module action is multiplicative modulo x^m - 1") {
    TowerCtx t = kt::tower_q(5, 3);
    FqView fv{&t.fq()};
    PolyFq mod = xm_minus_1(t.fq(), t.m());
    SplitMix64 rng(12);
    for (int i = 0; i < 100; ++i) {
        PolyFq f, g;
        for (u32 j = 0; j < 5; ++j) {
            f.c.push_back(t.fq().from_index(rng.next() % t.q()));
            g.c.push_back(t.fq().from_index(rng.next() % t.q()));
        }
        poly_trim(fv, f);
        poly_trim(fv, g);
        FqmElem a = kt::random_element(t, rng);
        FqmElem lhs = apply_module_action(t, poly_mod(fv, poly_mul(fv, f, g), mod), a);
        FqmElem rhs = apply_module_action(t, f, apply_module_action(t, g, a));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("ord_poly examples") {
    TowerCtx t8 = kt::f8_tower();
    FqView fv{&t8.fq()};
    auto fact = kt::xm1_fact(t8);
    CHECK(poly_indices(fv, ord_poly(t8, t8.zero(), fact)) == std::vector<u64>{1});
    CHECK(poly_indices(fv, ord_poly(t8, t8.one(), fact)) == std::vector<u64>{1, 1});
    // t+1 is normal: full annihilator x^3 - 1.
    CHECK(poly_indices(fv, ord_poly(t8, t8.from_index(3), fact)) == std::vector<u64>{1, 0, 0, 1});
}

TEST_CASE("g_alpha shape") {
    TowerCtx t8 = kt::f8_tower();
    FqmView mv{&t8};
    CHECK(poly_is_zero(g_alpha(t8, t8.zero())));
    auto g1 = g_alpha(t8, t8.one());
    REQUIRE(g1.c.size() == 3);
    for (const auto& c : g1.c) CHECK(t8.is_one(c));
    SplitMix64 rng(13);
    for (int i = 0; i < 20; ++i) {
        FqmElem a = kt::random_element(t8, rng);
        if (t8.is_zero(a)) continue;
        auto g = g_alpha(t8, a);
        CHECK(poly_deg(g) == 2);
        CHECK(g.c.back() == a);  // leading coefficient is the element itself
    }
}

TEST_CASE("the four characterizations agree") {
    TowerCtx t8 = kt::f8_tower();
    auto fact8 = kt::xm1_fact(t8);
    CHECK(k_via_span(t8, t8.zero()) == 3);
    CHECK(k_via_gcd(t8, t8.zero()) == 3);
    CHECK(k_via_rank(t8, t8.zero()) == 3);
    CHECK(k_via_ord(t8, t8.zero(), fact8) == 3);
    CHECK(k_via_span(t8, t8.one()) == 2);
    CHECK(k_via_gcd(t8, t8.one()) == 2);
    CHECK(k_via_span(t8, t8.from_index(3)) == 0);  // t + 1 is normal
    CHECK(k_via_gcd(t8, t8.from_index(3)) == 0);
    CHECK(k_via_rank(t8, t8.from_index(3)) == 0);
    CHECK(k_via_ord(t8, t8.from_index(3), fact8) == 0);

    for (auto [q, m] : std::vector<std::pair<u64, u32>>{{2, 3}, {2, 4}, {3, 3}, {4, 2}}) {
        TowerCtx t = kt::tower_q(q, m);
        auto fact = kt::xm1_fact(t);
        for (const FqmElem& a : enumerate_elements(t, 0, t.field_size()))
            assert_four_way_agreement(t, a, fact);
    }
}

TEST_CASE("classify modes") {
    TowerCtx t8 = kt::f8_tower();
    auto fact = kt::xm1_fact(t8);
    for (u64 i = 0; i < 8; ++i) {
        FqmElem a = t8.from_index(i);
        auto fast = classify(t8, a, fact, ClassifyMode::Fast);
        auto full = classify(t8, a, fact, ClassifyMode::Verify);
        CHECK(fast.k == full.k);
        CHECK(fast.span_dim == 3 - fast.k);
        CHECK(fast.gcd_deg == fast.k);
        CHECK(fast.matrix_rank == 3 - fast.k);
        CHECK_FALSE(fast.ord_poly.has_value());
        REQUIRE(full.ord_poly.has_value());
        CHECK(poly_deg(*full.ord_poly) == static_cast<int>(3 - full.k));
        FqView fv{&t8.fq()};
        auto [quot, rem] = poly_divmod(fv, xm_minus_1(t8.fq(), 3), *full.ord_poly);
        CHECK(poly_is_zero(rem));  // Ord divides x^m - 1
    }
}

TEST_CASE("counting formula pinned values") {
    FqCtx f8 = kt::fq_ctx_q(8);
    CHECK(count_k_normal_formula(f8, 6, 2, factor_xm_minus_1(f8, 6)) == 7560);
    FqCtx f9 = kt::fq_ctx_q(9);
    CHECK(count_k_normal_formula(f9, 5, 1, factor_xm_minus_1(f9, 5)) == 6400);
    FqCtx f2 = kt::fq_ctx_q(2);
    CHECK(count_k_normal_formula(f2, 10, 3, factor_xm_minus_1(f2, 10)) == 0);
    FqCtx f7 = kt::fq_ctx_q(7);
    CHECK(count_k_normal_formula(f7, 4, 3, factor_xm_minus_1(f7, 4)) == 12);
    CHECK_THROWS_AS(count_k_normal_formula(f7, 4, 5, factor_xm_minus_1(f7, 4)),
                    PreconditionViolated);
}

TEST_CASE("saygi closed form") {
    CHECK(saygi_count(3, 3, 0) == 18);
    CHECK(saygi_count(3, 3, 2) == 2);
    CHECK_THROWS_AS(saygi_count(2, 10, 1), PreconditionViolated);
    CHECK_THROWS_AS(saygi_count(3, 3, 3), PreconditionViolated);

    for (auto [q, m] : std::vector<std::pair<u64, u32>>{{3, 3}, {2, 4}, {5, 5}, {9, 3}, {4, 8}}) {
        FqCtx fq = kt::fq_ctx_q(q);
        auto fact = factor_xm_minus_1(fq, m);
        for (u32 k = 0; k < m; ++k)
            CHECK(saygi_count(q, m, k) == count_k_normal_formula(fq, m, k, fact));
    }
}

TEST_CASE("lower bound rationals") {
    FqCtx f9 = kt::fq_ctx_q(9);
    auto f95 = factor_xm_minus_1(f9, 5);
    CHECK(lower_bound(f9, 5, 1, f95) == Rational{51200, 9});
    CHECK(lower_bound(f9, 5, 0, f95) == Rational{51200, 1});
    FqCtx f2 = kt::fq_ctx_q(2);
    CHECK(lower_bound(f2, 10, 8, factor_xm_minus_1(f2, 10)) == Rational{15, 8});  // 480/256
}

TEST_CASE("existence verdicts") {
    SUBCASE("q=5 m=6: m divides q^m - 1") {
        auto v = existence_verdict(5, 6);
        CHECK(v.d == 6);
        for (u32 k = 0; k <= 6; ++k) CHECK(v.per_k[k] != ExistTag::None);
        CHECK(v.per_k[0] == ExistTag::Always);
        CHECK(v.per_k[2] == ExistTag::Divides);
        CHECK(v.per_k[4] == ExistTag::Divides);
    }
    SUBCASE("q=8 m=6: gcd window k >= 2") {
        auto v = existence_verdict(8, 6);
        CHECK(v.d == 3);
        REQUIRE(v.b.has_value());
        CHECK(*v.b == 2);
        CHECK(v.per_k[2] == ExistTag::Gcd);
        CHECK(v.per_k[3] == ExistTag::Gcd);
        CHECK(v.per_k[4] == ExistTag::Gcd);
        CHECK(v.per_k[5] == ExistTag::Always);
        for (u32 k = 0; k <= 6; ++k) CHECK(v.per_k[k] != ExistTag::None);
    }
    SUBCASE("q=2 m=10: defaults only") {
        auto v = existence_verdict(2, 10);
        CHECK(v.d == 1);
        CHECK(v.per_k[0] == ExistTag::Always);
        CHECK(v.per_k[1] == ExistTag::Always);
        CHECK(v.per_k[9] == ExistTag::Always);
        CHECK(v.per_k[10] == ExistTag::Always);
        for (u32 k = 2; k <= 8; ++k) CHECK(v.per_k[k] == ExistTag::None);
    }
    SUBCASE("q=3 m=6: Reis condition") {
        auto v = existence_verdict(3, 6);
        CHECK(v.per_k[2] == ExistTag::Reis);
        CHECK(v.per_k[3] == ExistTag::Reis);
        CHECK(v.per_k[4] == ExistTag::Reis);
        for (u32 k = 0; k <= 6; ++k) CHECK(v.per_k[k] != ExistTag::None);
    }
    CHECK_THROWS_AS(existence_verdict(6, 4), ValidationError);
}

TEST_CASE("find_k_normal") {
    TowerCtx t8 = kt::f8_tower();
    auto fact = kt::xm1_fact(t8);
    auto zero = find_k_normal(t8, 3, fact, census_size_guard());
    REQUIRE(zero.has_value());
    CHECK(t8.is_zero(*zero));

    auto normal = find_k_normal(t8, 0, fact, census_size_guard());
    REQUIRE(normal.has_value());
    CHECK(t8.index_of(*normal) == 3);  // smallest-index normal element is t + 1
    CHECK(classify(t8, *normal, fact, ClassifyMode::Verify).k == 0);

    TowerCtx t210 = kt::tower_q(2, 10);
    CHECK_FALSE(find_k_normal(t210, 3, kt::xm1_fact(t210), census_size_guard()).has_value());

    CHECK_THROWS_AS(find_k_normal(t8, 0, fact, 4), SizeGuardExceeded);
    CHECK_THROWS_AS(find_k_normal(t8, 4, fact, census_size_guard()), PreconditionViolated);
}

TEST_CASE("order-constrained search") {
    TowerCtx t8 = kt::f8_tower();
    auto fact = kt::xm1_fact(t8);
    CHECK(count_order_normal(t8, 7, fact) == 3);  // every normal element of F_8 is primitive
    auto e = find_order_normal(t8, 7, fact);
    REQUIRE(e.has_value());
    CHECK(t8.index_of(*e) == 3);
    CHECK(multiplicative_order(t8, *e) == 7);
    CHECK(k_via_span(t8, *e) == 0);
    CHECK(count_order_normal(t8, 1, fact) == 0);  // 1 is not normal for m > 1
    CHECK_THROWS_AS(count_order_normal(t8, 5, fact), NotADivisor);
}

TEST_CASE("census on small fields") {
    TowerCtx t8 = kt::f8_tower();
    auto fact = kt::xm1_fact(t8);
    auto rep = census(t8, fact, 1, ClassifyMode::Verify);
    CHECK(rep.counts == std::vector<u64>{3, 3, 1, 1});
    CHECK(rep.formula_counts == rep.counts);
    CHECK(rep.primitive_normal == 3);
    CHECK(rep.q1_primitive_normal == 3);  // q = 2: the two notions coincide
    CHECK(rep.counts == kt::brute_force_counts(t8));

    auto rep3 = census(t8, fact, 3, ClassifyMode::Fast);
    CHECK(rep3.counts == rep.counts);
    CHECK(rep3.primitive_normal == rep.primitive_normal);
    CHECK(rep3.q1_primitive_normal == rep.q1_primitive_normal);
    CHECK(census_to_json(rep3) == census_to_json(rep));  // bytes independent of workers

    CHECK_THROWS_AS(census(t8, fact, 1, ClassifyMode::Fast, 4), SizeGuardExceeded);
}

TEST_CASE("census reproduces pinned tables for medium fields") {
    SUBCASE("q=3 m=6") {
        TowerCtx t = kt::tower_q(3, 6);
        auto rep = census(t, kt::xm1_fact(t), 2);
        CHECK(rep.counts == std::vector<u64>{324, 216, 108, 60, 16, 4, 1});
        CHECK(rep.counts == kt::brute_force_counts(t));
    }
    SUBCASE("q=7 m=4 (erratum cell: k=3 is 12)") {
        TowerCtx t = kt::tower_q(7, 4);
        auto rep = census(t, kt::xm1_fact(t), 1);
        CHECK(rep.counts == std::vector<u64>{1728, 576, 84, 12, 1});
        CHECK(rep.q1_primitive_normal == 112);
    }
    SUBCASE("q=2 m=10 (erratum cell: k=4 is 30)") {
        TowerCtx t = kt::tower_q(2, 10);
        auto rep = census(t, kt::xm1_fact(t), 2);
        CHECK(rep.counts == std::vector<u64>{480, 240, 240, 0, 30, 15, 15, 0, 2, 1, 1});
    }
}

TEST_CASE("census of a degree-1 extension") {
    TowerCtx t = kt::tower_q(5, 1);
    auto rep = census(t, kt::xm1_fact(t), 1, ClassifyMode::Verify);
    CHECK(rep.counts == std::vector<u64>{4, 1});
    CHECK(rep.primitive_normal == 2);      // phi(4) generators, all nonzero = normal
    CHECK(rep.q1_primitive_normal == 1);   // order (q-1)/(q-1) = 1: the element 1
}

TEST_CASE("census size guard env override") {
    CHECK(census_size_guard() == kDefaultCensusGuard);
    setenv("KNORMAL_SIZE_GUARD", "100", 1);
    CHECK(census_size_guard() == 100);
    setenv("KNORMAL_SIZE_GUARD", "junk", 1);
    CHECK_THROWS_AS(census_size_guard(), ValidationError);
    unsetenv("KNORMAL_SIZE_GUARD");
    CHECK(census_size_guard() == kDefaultCensusGuard);
}
