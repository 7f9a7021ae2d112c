#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pseudospec/exppoly.hpp"

#include <functional>

using namespace pseudospec;

namespace {

ExpPoly random_poly(int p, int q, int k, Rng& rng, int nterms = 3, int maxdeg = 2) {
    ExpPoly f(p, q, k);
    for (int i = 0; i < nterms; ++i) {
        ExpTerm t;
        t.coeff = cplx(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
        for (int j = 0; j < p - k; ++j) t.a.push_back(uniform_int(rng, -3, 3));
        for (int j = 0; j < q - k; ++j) t.b.push_back(uniform_int(rng, -3, 3));
        for (int j = 0; j < k; ++j) t.m.push_back(uniform_int(rng, -3, 3));
        for (int j = 0; j < k; ++j) t.widths.push_back(uniform(rng, 0.7, 1.5));
        std::vector<int> e(static_cast<size_t>(k), 0);
        for (int j = 0; j < k; ++j) e[size_t(j)] = uniform_int(rng, 0, maxdeg);
        t.poly[e] = cplx(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
        std::vector<int> e2(static_cast<size_t>(k), 0);
        t.poly[e2] += cplx(uniform(rng, -0.5, 0.5), 0.0);
        f.add_term(std::move(t));
    }
    f.normalize();
    return f;
}

using PointFn = std::function<cplx(const CartanPoint&)>;

// 5-point fourth-order central difference in one coordinate
cplx fd1(const PointFn& f, const CartanPoint& h, int which, int idx, double eps) {
    auto shifted = [&](double d) {
        CartanPoint s = h;
        if (which == 0) s.phi[size_t(idx)] += d;
        else if (which == 1) s.psi[size_t(idx)] += d;
        else if (which == 2) s.t[size_t(idx)] += d;
        else s.theta[size_t(idx)] += d;
        return f(s);
    };
    return (-shifted(2 * eps) + 8.0 * shifted(eps) - 8.0 * shifted(-eps) + shifted(-2 * eps)) /
           (12.0 * eps);
}

// numeric version of the operator X_j (E-order), as nested lambdas
PointFn fd_X(int j, int p, int q, int k, const PointFn& f, double eps) {
    const int pk = p - k, qk = q - k;
    if (j <= pk) {
        int idx = j - 1;
        return [=](const CartanPoint& h) { return fd1(f, h, 0, idx, eps) / cplx(0.0, 1.0); };
    }
    if (j <= pk + k) {
        int g = j - pk - 1;
        return [=](const CartanPoint& h) {
            return 0.5 * (fd1(f, h, 2, g, eps) + fd1(f, h, 3, g, eps) / cplx(0.0, 1.0));
        };
    }
    if (j <= pk + k + qk) {
        int idx = j - pk - k - 1;
        return [=](const CartanPoint& h) { return fd1(f, h, 1, idx, eps) / cplx(0.0, 1.0); };
    }
    int g = j - pk - k - qk - 1;
    return [=](const CartanPoint& h) {
        return 0.5 * (-fd1(f, h, 2, g, eps) + fd1(f, h, 3, g, eps) / cplx(0.0, 1.0));
    };
}

double trapezoid(const std::function<double(double)>& f, double a, double b, int nsteps) {
    double acc = 0.5 * (f(a) + f(b));
    for (int i = 1; i < nsteps; ++i) acc += f(a + (b - a) * i / nsteps);
    return acc * (b - a) / nsteps;
}

} // namespace

TEST_CASE("phase operators scale by the integer phase") {
    ExpPoly f(1, 1, 0);
    ExpTerm t;
    t.a = {3};
    t.b = {0};
    t.poly = poly_const(0);
    f.add_term(t);
    ExpPoly g = apply_X(1, f);
    REQUIRE(g.terms.size() == 1);
    CHECK(std::abs(g.terms[0].coeff * g.terms[0].poly.begin()->second - cplx(3.0)) < 1e-15);

    ExpPoly zero(1, 1, 0);
    CHECK(apply_X(2, zero).is_zero());
}

TEST_CASE("rank-one composite operator acts as a phase difference") {
    Rng rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        ExpPoly f(1, 1, 0);
        ExpTerm t;
        int a = uniform_int(rng, -4, 4), b = uniform_int(rng, -4, 4);
        t.a = {a};
        t.b = {b};
        t.poly = poly_const(0);
        f.add_term(t);
        ExpPoly g = apply_vandermonde_op(GroupShape(1, 1), 0, f);
        CartanPoint h = random_point(GroupShape(1, 1), 0, rng);
        CHECK(std::abs(eval(g, h) - double(a - b) * eval(f, h)) < 1e-13);
    }
}

TEST_CASE("hyperbolic first-order operator matches finite differences") {
    // context (1,1,k=1): the composite operator reduces to d/dt
    Rng rng(29);
    ExpPoly f(1, 1, 1);
    ExpTerm t;
    t.m = {2};
    t.widths = {1.0};
    t.poly[{1}] = 1.0;  // t e^{-t^2} e^{2 i theta}
    f.add_term(t);

    ExpPoly Xf = apply_X(1, f);
    auto fn = [&](const CartanPoint& h) { return eval(f, h); };
    for (int trial = 0; trial < 10; ++trial) {
        CartanPoint h = random_point(GroupShape(1, 1), 1, rng);
        cplx want = fd_X(1, 1, 1, 1, fn, 1e-3)(h);
        CHECK(std::abs(eval(Xf, h) - want) < 1e-8);
    }
    // and the full rank-one hyperbolic composite is d/dt
    ExpPoly Df = apply_vandermonde_op(GroupShape(1, 1), 1, f);
    for (int trial = 0; trial < 10; ++trial) {
        CartanPoint h = random_point(GroupShape(1, 1), 1, rng);
        cplx want = fd1(fn, h, 2, 0, 1e-3);
        CHECK(std::abs(eval(Df, h) - want) < 1e-8);
    }
}

TEST_CASE("factored and expanded operator products agree") {
    Rng rng(31);
    for (auto [p, q, k] : {std::tuple<int, int, int>{2, 1, 0}, {2, 1, 1}, {1, 1, 1}, {2, 2, 1}}) {
        ExpPoly f = random_poly(p, q, k, rng);
        ExpPoly g1 = apply_vandermonde_op(GroupShape(p, q), k, f);
        ExpPoly g2 = apply(DiffOp::vandermonde(p + q), f);
        ExpPoly diff = g1 - g2;
        CHECK(diff.is_zero(1e-10 * std::max(1.0, g1.max_coeff())));
    }
}

TEST_CASE("operator product matches nested finite differences at random points") {
    Rng rng(37);
    for (auto [p, q, k] : {std::tuple<int, int, int>{1, 1, 1}, {2, 1, 0}, {2, 1, 1}}) {
        ExpPoly f = random_poly(p, q, k, rng, 2, 2);
        ExpPoly Df = apply_vandermonde_op(GroupShape(p, q), k, f);
        const int n = p + q;
        PointFn fn = [&](const CartanPoint& h) { return eval(f, h); };
        PointFn acc = fn;
        for (int j = 1; j <= n; ++j)
            for (int l = j + 1; l <= n; ++l) {
                PointFn prev = acc;
                PointFn xj = fd_X(j, p, q, k, prev, 5e-3);
                PointFn xl = fd_X(l, p, q, k, prev, 5e-3);
                acc = [xj, xl](const CartanPoint& h) { return xj(h) - xl(h); };
            }
        for (int trial = 0; trial < 3; ++trial) {
            CartanPoint h = random_point(GroupShape(p, q), k, rng, 1e-2);
            cplx sym = eval(Df, h), num = acc(h);
            CHECK(std::abs(sym - num) < 1e-6 * std::max(1.0, std::abs(sym)));
        }
    }
}

TEST_CASE("Leibniz rule holds symbolically") {
    Rng rng(41);
    ExpPoly f = random_poly(2, 1, 1, rng), g = random_poly(2, 1, 1, rng);
    for (int j = 1; j <= 3; ++j) {
        ExpPoly lhs = apply_X(j, f * g);
        ExpPoly rhs = apply_X(j, f) * g + f * apply_X(j, g);
        CHECK((lhs - rhs).is_zero(1e-12 * std::max(1.0, lhs.max_coeff())));
    }
}

TEST_CASE("pointwise evaluation basics") {
    ExpPoly one(2, 1, 0);
    ExpTerm t0;
    t0.a = {0, 0};
    t0.b = {0};
    t0.poly = poly_const(0);
    one.add_term(t0);
    Rng rng(5);
    CHECK(std::abs(eval(one, random_point(GroupShape(2, 1), 0, rng)) - 1.0) < 1e-15);

    ExpPoly ph(1, 1, 0);
    ExpTerm t1;
    t1.a = {1};
    t1.b = {0};
    t1.poly = poly_const(0);
    ph.add_term(t1);
    CartanPoint h(0, {PI / 2}, {0.0}, {}, {});
    CHECK(std::abs(eval(ph, h) - cplx(0.0, 1.0)) < 1e-15);

    ExpPoly gt(1, 1, 1);
    ExpTerm t2;
    t2.m = {0};
    t2.widths = {1.0};
    t2.poly[{1}] = 1.0;
    gt.add_term(t2);
    CartanPoint h2(1, {}, {}, {1.0}, {0.0});
    CHECK(std::abs(eval(gt, h2) - std::exp(-1.0)) < 1e-15);

    CHECK_THROWS_AS(eval(gt, h), std::domain_error);
}

TEST_CASE("conjugation") {
    Rng rng(43);
    ExpPoly f = random_poly(2, 1, 1, rng);
    ExpPoly cf = f.conj();
    for (int trial = 0; trial < 5; ++trial) {
        CartanPoint h = random_point(GroupShape(2, 1), 1, rng);
        CHECK(std::abs(eval(cf, h) - std::conj(eval(f, h))) < 1e-13);
    }
}

TEST_CASE("t-integration with plain weight equals closed-form moments") {
    ExpPoly f(1, 1, 1);
    ExpTerm t;
    t.m = {0};
    t.widths = {2.0};
    t.poly[{4}] = cplx(1.5, -0.5);
    t.poly[{1}] = 3.0;  // odd part integrates to zero
    f.add_term(t);
    auto r = integrate_t(f, {Weight::plain()});
    cplx want = cplx(1.5, -0.5) * gaussian_moment(4, 2.0);
    CHECK(std::abs(r.value - want) < 1e-12 * std::abs(want));

    // two t-variables factorize
    ExpPoly g(2, 2, 2);
    ExpTerm t2;
    t2.m = {0, 0};
    t2.widths = {1.0, 3.0};
    t2.poly[{2, 4}] = 2.0;
    g.add_term(t2);
    auto r2 = integrate_t(g, {Weight::plain(), Weight::plain()});
    double want2 = 2.0 * gaussian_moment(2, 1.0) * gaussian_moment(4, 3.0);
    CHECK(std::abs(r2.value - want2) < 1e-12 * want2);
}

TEST_CASE("singular pairings cross-checked against a trapezoid oracle") {
    // int t e^{-t^2} coth(t/2) dt, with the t -> 0 limit t coth(t/2) -> 2
    ExpPoly f(1, 1, 1);
    ExpTerm t;
    t.m = {0};
    t.widths = {1.0};
    t.poly[{1}] = 1.0;
    f.add_term(t);
    auto r = integrate_t(f, {Weight::coth_half()});
    double oracle = 2.0 * trapezoid(
                              [](double x) {
                                  double prod = x < 1e-8 ? 2.0 : x / std::tanh(0.5 * x);
                                  return prod * std::exp(-x * x);
                              },
                              0.0, 12.0, 400000);
    CHECK(r.value.real() == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(std::abs(r.value.imag()) < 1e-14);

    ExpPoly g(1, 1, 1);
    ExpTerm t3;
    t3.m = {0};
    t3.widths = {2.0};
    t3.poly[{3}] = 1.0;
    g.add_term(t3);
    auto r3 = integrate_t(g, {Weight::tanh_half()});
    double oracle3 = 2.0 * trapezoid(
                               [](double x) {
                                   return x * x * x * std::tanh(0.5 * x) * std::exp(-2 * x * x);
                               },
                               0.0, 10.0, 400000);
    CHECK(r3.value.real() == doctest::Approx(oracle3).epsilon(1e-8));
}

TEST_CASE("odd-integrand precondition for principal-value weights") {
    ExpPoly even(1, 1, 1);
    ExpTerm t;
    t.m = {0};
    t.widths = {1.0};
    t.poly[{2}] = 1.0;
    even.add_term(t);
    CHECK_THROWS_AS(integrate_t(even, {Weight::coth_half()}), std::domain_error);
    auto r = integrate_t(even, {Weight::coth_half()}, /*require_odd=*/false);
    CHECK(r.value == cplx(0.0));  // parity gate

    ExpPoly gauss(1, 1, 1);
    ExpTerm t2;
    t2.m = {0};
    t2.widths = {1.0};
    t2.poly = poly_const(1);
    gauss.add_term(t2);
    auto rt = integrate_t(gauss, {Weight::tanh_half()});
    CHECK(rt.value == cplx(0.0));  // odd total integrand

    ExpPoly phased(1, 1, 1);
    ExpTerm t4;
    t4.m = {1};
    t4.widths = {1.0};
    t4.poly = poly_const(1);
    phased.add_term(t4);
    CHECK_THROWS_AS(integrate_t(phased, {Weight::plain()}), std::domain_error);
}

TEST_CASE("JSON round trip preserves evaluation") {
    Rng rng(47);
    ExpPoly f = random_poly(2, 1, 1, rng);
    nlohmann::json j = f;
    auto f2 = j.get<ExpPoly>();
    for (int trial = 0; trial < 5; ++trial) {
        CartanPoint h = random_point(GroupShape(2, 1), 1, rng);
        CHECK(std::abs(eval(f, h) - eval(f2, h)) < 1e-14);
    }
}
