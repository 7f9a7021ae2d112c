#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pseudospec/cartan.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>

using namespace pseudospec;

TEST_CASE("shape validation") {
    CHECK_THROWS_AS(GroupShape(1, 2), std::domain_error);
    CHECK_THROWS_AS(GroupShape(0, 0), std::domain_error);
    GroupShape s(3, 2);
    CHECK(s.n() == 5);
    CartanPoint h;
    h.k = 1;
    CHECK_THROWS_AS(h.check_shape(s), std::domain_error);  // empty coordinate lists
}

// independent oracle: realize the k=1 Cartan subgroup of U(2,1) as matrices,
// J = diag(1,1,-1), pair (x2,y1) hyperbolic, and diagonalize with Eigen
TEST_CASE("eigenvalue list matches a matrix realization for U(2,1), k=1") {
    GroupShape s(2, 1);
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        CartanPoint h = random_point(s, 1, rng, 1e-3);
        const double phi = h.phi[0], t = h.t[0], th = h.theta[0];

        Eigen::Matrix3cd M = Eigen::Matrix3cd::Zero();
        const cplx eith = std::exp(cplx(0.0, th));
        M(0, 0) = std::exp(cplx(0.0, phi));
        M(1, 1) = eith * std::cosh(t);
        M(1, 2) = eith * std::sinh(t);
        M(2, 1) = eith * std::sinh(t);
        M(2, 2) = eith * std::cosh(t);

        // the matrix must preserve the (2,1) form
        Eigen::Matrix3cd J = Eigen::Matrix3cd::Zero();
        J(0, 0) = 1.0; J(1, 1) = 1.0; J(2, 2) = -1.0;
        CHECK((M.adjoint() * J * M - J).norm() < 1e-12);

        Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(M);
        REQUIRE(es.info() == Eigen::Success);
        std::vector<cplx> got(es.eigenvalues().data(), es.eigenvalues().data() + 3);
        std::vector<cplx> want = eigenvalues(s, h);
        REQUIRE(want.size() == 3);

        // compare as multisets
        auto key = [](const cplx& a, const cplx& b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        };
        std::sort(got.begin(), got.end(), key);
        std::sort(want.begin(), want.end(), key);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(got[i] - want[i]) < 1e-10);
    }
}

TEST_CASE("eigenvalue pattern: unimodular angles and (lambda, 1/conj(lambda)) pairs") {
    GroupShape s(3, 2);
    Rng rng(5);
    for (int k = 0; k <= 2; ++k) {
        CartanPoint h = random_point(s, k, rng, 1e-3);
        auto ev = eigenvalues(s, h);
        REQUIRE((int)ev.size() == 5);
        const int pk = s.p - k, qk = s.q - k;
        for (int i = 0; i < pk; ++i) CHECK(std::abs(std::abs(ev[i]) - 1.0) < 1e-13);
        for (int i = 0; i < qk; ++i) CHECK(std::abs(std::abs(ev[pk + k + i]) - 1.0) < 1e-13);
        for (int g = 0; g < k; ++g) {
            const cplx lam = ev[pk + g], mu = ev[pk + k + qk + g];
            CHECK(std::abs(mu - 1.0 / std::conj(lam)) < 1e-12);
        }
    }
}

TEST_CASE("Weyl group orders and omega") {
    GroupShape s(3, 2);
    CHECK(weyl_order(s, 0) == 12);
    CHECK(weyl_order(s, 1) == 4);
    CHECK(weyl_order(s, 2) == 8);
    CHECK(omega(s, 0) == Rational(1, 12));
    CHECK(omega(s, 1) == Rational(1, 4));
    CHECK(omega(s, 2) == Rational(1, 8));
    GroupShape u11(1, 1);
    CHECK(omega(u11, 0) == Rational(1, 1));
    CHECK(omega(u11, 1) == Rational(1, 2));
    for (int k = 0; k <= 2; ++k)
        CHECK((long long)weyl_elements(s, k).size() == weyl_order(s, k));
}

TEST_CASE("Weyl action: composition, inverse, and invariance of |Vandermonde|") {
    GroupShape s(2, 2);
    Rng rng(23);
    for (int k = 0; k <= 2; ++k) {
        auto W = weyl_elements(s, k);
        CartanPoint h = random_point(s, k, rng, 1e-2);
        const double base = std::abs(vandermonde_at(s, h));

        auto close = [](const CartanPoint& a, const CartanPoint& b) {
            auto ang = [](double x, double y) {
                return std::abs(std::remainder(x - y, 2.0 * PI)) < 1e-12;
            };
            for (size_t i = 0; i < a.phi.size(); ++i)
                if (!ang(a.phi[i], b.phi[i])) return false;
            for (size_t i = 0; i < a.psi.size(); ++i)
                if (!ang(a.psi[i], b.psi[i])) return false;
            for (size_t i = 0; i < a.t.size(); ++i)
                if (std::abs(a.t[i] - b.t[i]) > 1e-12) return false;
            for (size_t i = 0; i < a.theta.size(); ++i)
                if (!ang(a.theta[i], b.theta[i])) return false;
            return true;
        };

        for (const auto& w : W) {
            CHECK(close(weyl_act(w.inverse(), weyl_act(w, h)), h));
            CHECK(std::abs(std::abs(vandermonde_at(s, weyl_act(w, h))) - base) <
                  1e-10 * std::max(1.0, base));
        }
        for (size_t a = 0; a < W.size(); a += 3)
            for (size_t b = 0; b < W.size(); b += 3)
                CHECK(close(weyl_act(compose(W[a], W[b]), h),
                            weyl_act(W[a], weyl_act(W[b], h))));
    }
}

TEST_CASE("random_point respects the regularity margin") {
    GroupShape s(3, 2);
    Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        CartanPoint h = random_point(s, 2, rng, 0.05);
        for (double t : h.t) CHECK(std::abs(t) >= 0.05);
        auto ev = eigenvalues(s, h);
        for (size_t a = 0; a < ev.size(); ++a)
            for (size_t b = a + 1; b < ev.size(); ++b)
                CHECK(std::abs(ev[a] - ev[b]) >= 0.05);
    }
}

// class membership is detected from signed orbit sums of a generic seed:
// the sum with character chi lies in the chi-isotypic class by construction
TEST_CASE("symmetry classifier on constructed class members") {
    GroupShape s(3, 2);
    const int k = 1;
    auto W = weyl_elements(s, k);

    auto seed = [](const CartanPoint& h) {
        cplx v = 1.0;
        for (size_t i = 0; i < h.phi.size(); ++i)
            v *= std::exp(cplx(0.0, (double(i) + 1.0) * h.phi[i])) + 0.5 * double(i + 1);
        for (size_t i = 0; i < h.psi.size(); ++i)
            v *= std::exp(cplx(0.0, 2.0 * h.psi[i])) + cplx(0.3, 0.1);
        for (size_t i = 0; i < h.t.size(); ++i)
            v *= std::exp(0.4 * h.t[i]) + std::cos(h.theta[i] + 0.2);
        return v;
    };

    auto orbit_sum = [&](const std::function<double(const WeylElement&)>& chi) {
        return [&, chi](const CartanPoint& h) {
            cplx acc = 0.0;
            for (const auto& w : W) acc += chi(w) * seed(weyl_act(w, h));
            return acc;
        };
    };

    auto chi_sym = [](const WeylElement& w) {
        int r = 0;
        for (bool b : w.refl) r += b ? 1 : 0;
        return r % 2 == 0 ? 1.0 : -1.0;
    };
    auto chi_skew = [](const WeylElement& w) {
        return double(permutation_sign(w.perm_phi) * permutation_sign(w.perm_psi));
    };

    Rng rng(3);
    auto rep_sym = symmetry_type(s, k, orbit_sum(chi_sym), 6, rng);
    CHECK(rep_sym.epsilon_symmetric);
    CHECK_FALSE(rep_sym.epsilon_skew_symmetric);

    auto rep_skew = symmetry_type(s, k, orbit_sum(chi_skew), 6, rng);
    CHECK(rep_skew.epsilon_skew_symmetric);
    CHECK_FALSE(rep_skew.epsilon_symmetric);

    auto rep_none = symmetry_type(s, k, seed, 6, rng);
    CHECK_FALSE(rep_none.epsilon_symmetric);
    CHECK_FALSE(rep_none.epsilon_skew_symmetric);
}

TEST_CASE("JSON round trip for Cartan points") {
    CartanPoint h(1, {0.3, -1.2}, {2.0}, {0.7}, {-0.4});
    nlohmann::json j = h;
    auto h2 = j.get<CartanPoint>();
    CHECK(h2.k == 1);
    CHECK(h2.phi == h.phi);
    CHECK(h2.psi == h.psi);
    CHECK(h2.t == h.t);
    CHECK(h2.theta == h.theta);
}
