#include <numeric>

#include "doctest.h"
#include "test_util.hpp"

using namespace knormal;

namespace {

std::vector<std::vector<u64>> entry_indices(const FqCtx& fq, const Factorization& f) {
    FqView fv{&fq};
    std::vector<std::vector<u64>> out;
    for (const auto& e : f.entries) out.push_back(poly_indices(fv, e.poly));
    return out;
}

// Distinct roots of x^m - 1 in F_{q^m}: an irreducible factor of degree d
// contributes d roots exactly when d divides m.
u64 roots_in_extension(const Factorization& f, u32 m) {
    u64 n = 0;
    for (const auto& e : f.entries) {
        u32 d = static_cast<u32>(e.poly.c.size() - 1);
        if (m % d == 0) n += d;
    }
    return n;
}

u64 gcd_qm_minus_1_m(u64 q, u32 m) {
    u64 r = powmod_u64(q % m, m, m);
    return std::gcd((r + m - 1) % m, u64(m));
}

}  // namespace

TEST_CASE("cyclotomic cosets") {
    auto c = cyclotomic_cosets(2, 5);
    REQUIRE(c.size() == 2);
    CHECK(c[0].representative == 0);
    CHECK(c[0].members == std::vector<u64>{0});
    CHECK(c[1].representative == 1);
    CHECK(c[1].members == std::vector<u64>{1, 2, 3, 4});

    auto one = cyclotomic_cosets(7, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].members == std::vector<u64>{0});

    CHECK_THROWS_AS(cyclotomic_cosets(2, 4), NotCoprime);

    for (auto [q, m1] : std::vector<std::pair<u64, u64>>{{3, 8}, {5, 12}, {9, 20}, {2, 31}}) {
        u64 total = 0;
        for (const auto& coset : cyclotomic_cosets(q, m1)) total += coset.members.size();
        CHECK(total == m1);  // partition
    }
}

TEST_CASE("factor x^m - 1 pinned examples") {
    SUBCASE("q=2 m=10") {
        auto f = factor_xm_minus_1(kt::fq_ctx_q(2), 10);
        auto idx = entry_indices(kt::fq_ctx_q(2), f);
        REQUIRE(idx.size() == 2);
        CHECK(idx[0] == std::vector<u64>{1, 1});
        CHECK(idx[1] == std::vector<u64>{1, 1, 1, 1, 1});
        CHECK(f.entries[0].mult == 2);
        CHECK(f.entries[1].mult == 2);
    }
    SUBCASE("q=3 m=6") {
        auto f = factor_xm_minus_1(kt::fq_ctx_q(3), 6);
        auto idx = entry_indices(kt::fq_ctx_q(3), f);
        REQUIRE(idx.size() == 2);
        CHECK(idx[0] == std::vector<u64>{1, 1});
        CHECK(idx[1] == std::vector<u64>{2, 1});
        CHECK(f.entries[0].mult == 3);
        CHECK(f.entries[1].mult == 3);
    }
    SUBCASE("q=5 m=6") {
        auto f = factor_xm_minus_1(kt::fq_ctx_q(5), 6);
        auto idx = entry_indices(kt::fq_ctx_q(5), f);
        REQUIRE(idx.size() == 4);
        CHECK(idx[0] == std::vector<u64>{1, 1});
        CHECK(idx[1] == std::vector<u64>{4, 1});
        CHECK(idx[2] == std::vector<u64>{1, 1, 1});
        CHECK(idx[3] == std::vector<u64>{1, 4, 1});
        for (const auto& e : f.entries) CHECK(e.mult == 1);
    }
    SUBCASE("q=8 m=6") {
        auto f = factor_xm_minus_1(kt::fq_ctx_q(8), 6);
        auto idx = entry_indices(kt::fq_ctx_q(8), f);
        REQUIRE(idx.size() == 2);
        CHECK(idx[0] == std::vector<u64>{1, 1});
        CHECK(idx[1] == std::vector<u64>{1, 1, 1});
        CHECK(f.entries[0].mult == 2);
        CHECK(f.entries[1].mult == 2);
    }
    SUBCASE("m=1") {
        auto f = factor_xm_minus_1(kt::fq_ctx_q(7), 1);
        auto idx = entry_indices(kt::fq_ctx_q(7), f);
        REQUIRE(idx.size() == 1);
        CHECK(idx[0] == std::vector<u64>{6, 1});  // x - 1
        CHECK(f.entries[0].mult == 1);
    }
}

TEST_CASE("factorization invariants across the census fields") {
    const std::vector<std::pair<u64, u32>> fields = {{2, 3}, {2, 10}, {9, 5}, {8, 6},
                                                     {3, 6}, {5, 6},  {17, 3}, {7, 4}};
    for (auto [q, m] : fields) {
        CAPTURE(q);
        CAPTURE(m);
        FqCtx fq = kt::fq_ctx_q(q);
        FqView fv{&fq};
        auto f = factor_xm_minus_1(fq, m);
        u32 degsum = 0;
        for (const auto& e : f.entries) {
            CHECK(is_irreducible(fv, e.poly));
            CHECK(e.poly.c.back() == fq.one());
            degsum += static_cast<u32>(e.poly.c.size() - 1) * e.mult;
        }
        CHECK(degsum == m);
        CHECK(poly_eq(fv, factorization_product(fq, f), xm_minus_1(fq, m)));
        // Entries strictly sorted by (degree, serialized coefficients).
        auto idx = entry_indices(fq, f);
        for (size_t i = 0; i + 1 < idx.size(); ++i) {
            bool lt = idx[i].size() != idx[i + 1].size() ? idx[i].size() < idx[i + 1].size()
                                                         : idx[i] < idx[i + 1];
            CHECK(lt);
        }
        // Root count of x^m - 1 in the top field equals gcd(q^m - 1, m).
        CHECK(roots_in_extension(f, m) == gcd_qm_minus_1_m(q, m));
    }
}

TEST_CASE("cyclotomic polynomials") {
    FqCtx f2 = kt::fq_ctx_q(2);
    FqView fv2{&f2};
    CHECK(poly_indices(fv2, cyclotomic_poly(f2, 1)) == std::vector<u64>{1, 1});
    CHECK(poly_indices(fv2, cyclotomic_poly(f2, 3)) == std::vector<u64>{1, 1, 1});
    CHECK_THROWS_AS(cyclotomic_poly(f2, 2), CharDividesIndex);
    CHECK_THROWS_AS(cyclotomic_poly(kt::fq_ctx_q(3), 6), CharDividesIndex);

    // prod_{d | m} Q_d = x^m - 1 whenever gcd(m, p) = 1.
    for (auto [q, m] : std::vector<std::pair<u64, u32>>{{5, 6}, {7, 4}, {2, 15}, {9, 5}}) {
        FqCtx fq = kt::fq_ctx_q(q);
        FqView fv{&fq};
        PolyFq prod = poly_one(fv);
        for (u32 d = 1; d <= m; ++d)
            if (m % d == 0) prod = poly_mul(fv, prod, cyclotomic_poly(fq, d));
        CHECK(poly_eq(fv, prod, xm_minus_1(fq, m)));
    }
}

TEST_CASE("phi_q pinned values and brute-force oracle") {
    FqCtx f2 = kt::fq_ctx_q(2);
    CHECK(phi_q(f2, factor_xm_minus_1(f2, 3)) == 3);

    FqCtx f8 = kt::fq_ctx_q(8);
    CHECK(phi_q(f8, factor_xm_minus_1(f8, 6)) == 225792);

    CHECK(phi_q(f2, Factorization{}) == 1);  // empty product

    for (auto [q, m] : std::vector<std::pair<u64, u32>>{{2, 10}, {3, 6}, {5, 4}, {7, 3}, {9, 3}}) {
        FqCtx fq = kt::fq_ctx_q(q);
        auto fact = factor_xm_minus_1(fq, m);
        CHECK(phi_q(fq, fact) == kt::brute_force_phi(fq, xm_minus_1(fq, m)));
    }
}

TEST_CASE("phi_q overflow is loud") {
    // q = 2^31 - 1 and q = 1 mod 3, so x^3 - 1 splits into three linear
    // factors and phi = (q-1)^3 needs 93 bits.
    FqCtx fq(2147483647, 1, std::nullopt, 0);
    auto fact = factor_xm_minus_1(fq, 3);
    CHECK_THROWS_AS(phi_q(fq, fact), Overflow);
}

TEST_CASE("divisors_by_degree") {
    FqCtx f2 = kt::fq_ctx_q(2);
    auto f210 = factor_xm_minus_1(f2, 10);
    CHECK(divisors_by_degree(f210, 7).empty());  // degrees are a + 4b
    auto trivial = divisors_by_degree(f210, 0);
    REQUIRE(trivial.size() == 1);
    CHECK(trivial[0].entries.empty());

    FqCtx f7 = kt::fq_ctx_q(7);
    auto f74 = factor_xm_minus_1(f7, 4);
    auto d3 = divisors_by_degree(f74, 3);
    CHECK(d3.size() == 2);  // (x-1)(x^2+1) and (x+1)(x^2+1)
    FqView fv7{&f7};
    for (const auto& d : d3) {
        CHECK(d.total_degree() == 3);
        auto [quot, rem] = poly_divmod(fv7, xm_minus_1(f7, 4), factorization_product(f7, d));
        CHECK(poly_is_zero(rem));
    }

    u64 enumerated = 0;
    for (u32 deg = 0; deg <= 10; ++deg) enumerated += divisors_by_degree(f210, deg).size();
    CHECK(enumerated == f210.divisor_total());  // (2+1)(2+1)

    CHECK_THROWS_AS(divisors_by_degree(f210, 11), PreconditionViolated);
}
