#include <random>
#include <set>

#include "birank/lattice.hpp"
#include "doctest.h"

using namespace birank;

TEST_CASE("digit sets") {
    DilationPair triadic(3, 3);
    DigitSet ds = digits_for(triadic, 1, 1);
    REQUIRE(ds.det() == 9);
    std::vector<std::array<int, 2>> expect = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1},
                                              {1, 2}, {2, 0}, {2, 1}, {2, 2}};
    CHECK(ds.digits == expect);

    DilationPair dyadic(2, 2);
    DigitSet a = digits_for(dyadic, 1, 0);
    REQUIRE(a.det() == 2);
    CHECK(a.digits == std::vector<std::array<int, 2>>{{0, 0}, {1, 0}});

    CHECK_THROWS_WITH(digits_for(dyadic, 0, 0), "identity dilation has a single trivial coset");
    CHECK_THROWS(DilationPair(1, 2));
}

TEST_CASE("(2,3) digits are distinct modulo T") {
    DilationPair d(2, 3);
    DigitSet ds = digits_for(d, 1, 1);
    REQUIRE(ds.det() == 6);
    // Brute-force residue check of all pairs.
    for (std::size_t i = 0; i < ds.digits.size(); ++i)
        for (std::size_t j = i + 1; j < ds.digits.size(); ++j) {
            bool same_coset = (ds.digits[i][0] - ds.digits[j][0]) % 2 == 0 &&
                              (ds.digits[i][1] - ds.digits[j][1]) % 3 == 0;
            CHECK_FALSE(same_coset);
        }
}

TEST_CASE("coset index") {
    DilationPair triadic(3, 3);
    TSpec ab{1, 1};
    DigitSet ds = digits_for(triadic, 1, 1);
    int idx = coset_index(triadic, ab, {4, 7});
    CHECK(ds.digits[idx] == std::array<int, 2>{1, 1});
    for (std::size_t j = 0; j < ds.digits.size(); ++j)
        CHECK(coset_index(ds, ds.digits[j]) == static_cast<int>(j));

    std::mt19937 rng(5);
    std::uniform_int_distribution<int> u(-50, 50);
    for (int t = 0; t < 200; ++t) {
        std::array<int, 2> k{u(rng), u(rng)};
        int i = coset_index(ds, k);
        CHECK((k[0] - ds.digits[i][0]) % 3 == 0);
        CHECK((k[1] - ds.digits[i][1]) % 3 == 0);
    }
}

TEST_CASE("cosets partition the window") {
    DilationPair d(2, 3);
    DigitSet ds = digits_for(d, 1, 1);
    std::vector<int> counts(ds.det(), 0);
    for (int x = -20; x <= 20; ++x)
        for (int y = -20; y <= 20; ++y) {
            int i = coset_index(ds, {x, y});
            REQUIRE(i >= 0);
            REQUIRE(i < ds.det());
            ++counts[i];
        }
    int total = 0;
    for (int c : counts) {
        CHECK(c > 0);
        total += c;
    }
    CHECK(total == 41 * 41);
}

TEST_CASE("freq grid midpoints") {
    FreqGrid g(4.0 * kPi / 3.0, 768);
    CHECK(g.spacing() == doctest::Approx(kPi / 288).epsilon(1e-14));
    // Midpoints never sit on the breakpoint lattice (multiples of pi/3).
    for (int i = 0; i < g.n; ++i) {
        double frac = g.node(i) / (kPi / 3.0);
        CHECK(std::abs(frac - std::round(frac)) > 1e-6);
    }
    CHECK(g.cell_of(g.node(17)) == 17);
    CHECK(g.cell_of(-10.0) == -1);
    CHECK_THROWS(FreqGrid(1.0, 0));
}
