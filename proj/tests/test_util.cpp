#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pseudospec/util.hpp"

#include <algorithm>

using namespace pseudospec;

TEST_CASE("rational arithmetic normalizes and is exact") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(3, 4) * Rational(2, 3) == Rational(1, 2));
    CHECK(Rational(1, 6) - Rational(1, 6) == Rational(0));
    CHECK(Rational(7, 3) / Rational(7, 3) == Rational(1));
    CHECK(Rational(1, 3).value() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("factorials and binomials") {
    CHECK(factorial_ll(0) == 1);
    CHECK(factorial_ll(5) == 120);
    CHECK(factorial_ll(12) == 479001600LL);
    for (int n = 0; n <= 20; ++n) {
        long long row = 0;
        for (int k = 0; k <= n; ++k) {
            if (k > 0 && k < n)
                CHECK(binomial_ll(n, k) == binomial_ll(n - 1, k - 1) + binomial_ll(n - 1, k));
            row += binomial_ll(n, k);
        }
        CHECK(row == (1LL << n));
    }
    CHECK(binomial_ll(5, -1) == 0);
    CHECK(binomial_ll(5, 6) == 0);
}

TEST_CASE("parity sign") {
    CHECK(parity_sign(0) == 1);
    CHECK(parity_sign(1) == -1);
    CHECK(parity_sign(7) == -1);
    CHECK(parity_sign(10) == 1);
}

TEST_CASE("reduce_angle lands in [-pi, pi) and preserves the point on the circle") {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        double x = uniform(rng, -50.0, 50.0);
        double y = reduce_angle(x);
        CHECK(y >= -PI);
        CHECK(y < PI);
        CHECK(std::abs(std::remainder(x - y, 2.0 * PI)) < 1e-12);
    }
    CHECK(reduce_angle(PI) == doctest::Approx(-PI));
    CHECK(reduce_angle(-PI) == doctest::Approx(-PI));
    CHECK(reduce_angle(0.0) == 0.0);
}

static int sign_by_inversions(const std::vector<int>& p) {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

TEST_CASE("permutation sign agrees with inversion count on all of S_n, n <= 6") {
    for (int n = 0; n <= 6; ++n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        do {
            CHECK(permutation_sign(p) == sign_by_inversions(p));
            CHECK(is_permutation(p));
        } while (std::next_permutation(p.begin(), p.end()));
    }
    CHECK_FALSE(is_permutation({0, 0}));
    CHECK_FALSE(is_permutation({1, 2}));
}
