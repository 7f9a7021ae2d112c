#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "pseudospec/cartan.hpp"
#include "pseudospec/smallgroup.hpp"

using namespace pseudospec;

namespace {

GroupPoint11 random_point11(Rng& rng, double s_hi) {
    return {uniform(rng, -PI, PI), uniform(rng, 0.0, s_hi), uniform(rng, -PI, PI),
            uniform(rng, -PI, PI)};
}

cplx mat_trace(const Mat2& g) { return g.a + g.d; }

// shared calibration set: window widths spread far apart, otherwise the two
// slice functionals are nearly proportional and nu_0, nu_1 are poorly pinned
const std::vector<SmoothGroupFunction>& calib_set() {
    static const std::vector<SmoothGroupFunction> fns = [] {
        auto mk = [](std::initializer_list<SmoothGroupFunction::Term> ts) {
            SmoothGroupFunction f;
            f.terms = ts;
            return f;
        };
        std::vector<SmoothGroupFunction> v;
        v.push_back(mk({{cplx(1.0, 0.0), {0, 0, 0, 0, 0, 0, 0, 0}, 0.5}}));
        v.push_back(mk({{cplx(1.0, 0.0), {0, 0, 0, 0, 0, 0, 0, 0}, 2.5}}));
        v.push_back(mk({{cplx(1.0, 0.0), {2, 0, 0, 0, 0, 0, 0, 0}, 1.0}}));
        v.push_back(mk({{cplx(0.0, 1.0), {0, 1, 0, 0, 0, 0, 0, 0}, 1.5},
                        {cplx(1.0, 0.0), {0, 0, 0, 0, 0, 0, 1, 0}, 0.9}}));
        return v;
    }();
    return fns;
}

const WeylReport& cached_weyl() {
    static const WeylReport wr = weyl_integration_check(calib_set(), {}, LabConfig{});
    return wr;
}

}  // namespace

TEST_CASE("chart lands in the group and matches the Cartan eigenvalue order") {
    Rng rng(11);
    for (int i = 0; i < 40; ++i) {
        const Mat2 g = realize(random_point11(rng, 3.0));
        CHECK(defining_defect(g) < 1e-12);
        const Mat2 gi = group_inverse(g);
        const Mat2 id = mat_mul(g, gi);
        CHECK(std::abs(id.a - 1.0) + std::abs(id.b) + std::abs(id.c) + std::abs(id.d - 1.0) <
              1e-12);
    }
    CHECK(haar_weight(GroupPoint11{0.3, 0.0, -0.1, 0.9}) == 0.0);
    CHECK_THROWS_AS(realize(GroupPoint11{0.0, -0.5, 0.0, 0.0}), std::domain_error);

    const GroupShape s(1, 1);
    for (int i = 0; i < 10; ++i) {
        CartanPoint h0;
        h0.k = 0;
        h0.phi = {uniform(rng, -PI, PI)};
        h0.psi = {uniform(rng, -PI, PI)};
        const auto ev = eigenvalues(s, h0);
        const Mat2 m = torus_h(h0.phi[0], h0.psi[0]);
        CHECK(std::abs(m.a - ev[0]) < 1e-12);
        CHECK(std::abs(m.d - ev[1]) < 1e-12);
        CHECK(defining_defect(m) < 1e-12);
    }
    for (int i = 0; i < 10; ++i) {
        CartanPoint h1;
        h1.k = 1;
        h1.t = {uniform(rng, -2.0, 2.0)};
        h1.theta = {uniform(rng, -PI, PI)};
        const auto ev = eigenvalues(s, h1);
        const Mat2 m = split_h(h1.t[0], h1.theta[0]);
        // same spectrum: compare the symmetric functions
        CHECK(std::abs(mat_trace(m) - (ev[0] + ev[1])) < 1e-12);
        CHECK(std::abs((m.a * m.d - m.b * m.c) - ev[0] * ev[1]) < 1e-12);
        CHECK(defining_defect(m) < 1e-12);
    }
}

TEST_CASE("Haar quadrature is translation invariant") {
    Rng rng(23);
    // the translated integrand picks up angular frequencies that grow like
    // exp(boost of g0), so keep the translations moderate for the stock grid
    LabConfig cfg;
    for (int i = 0; i < 3; ++i) {
        const SmoothGroupFunction f = random_group_fn(rng);
        const cplx base = haar_integral(f, cfg);
        REQUIRE(std::abs(base) > 1e-6);
        for (int j = 0; j < 5; ++j) {
            const Mat2 g0 = realize(random_point11(rng, 1.0));
            const cplx lt = haar_integral_translated(f, g0, Mat2{}, cfg);
            const cplx rt = haar_integral_translated(f, Mat2{}, g0, cfg);
            CHECK(std::abs(lt - base) / std::abs(base) < 1e-3);
            CHECK(std::abs(rt - base) / std::abs(base) < 1e-3);
        }
    }
}

TEST_CASE("slice transforms: class functions, Weyl flip, conjugation covariance") {
    Rng rng(37);
    LabConfig cfg;

    // on a class function the transform is f(h) times the slice volume
    const double vol0 = 2.0 * PI * 0.5 * (std::cosh(2.0 * cfg.s_max) - 1.0);
    const double vol1 = 2.0 * PI * std::sinh(2.0 * cfg.s_max);
    {
        CartanPoint h0;
        h0.k = 0;
        h0.phi = {0.8};
        h0.psi = {-0.4};
        const cplx v = harish_transform_fn([](const Mat2& g) { return mat_trace(g); }, 0, h0, cfg);
        const cplx want = mat_trace(torus_h(0.8, -0.4)) * vol0;
        CHECK(std::abs(v - want) / std::abs(want) < 1e-9);

        CartanPoint h1;
        h1.k = 1;
        h1.t = {0.7};
        h1.theta = {1.1};
        const cplx w = harish_transform_fn([](const Mat2& g) { return mat_trace(g); }, 1, h1, cfg);
        const cplx want1 = mat_trace(split_h(0.7, 1.1)) * vol1;
        CHECK(std::abs(w - want1) / std::abs(want1) < 1e-9);
    }

    // the split Cartan's reflection t -> -t is realized by conjugation, so the
    // transform inherits the symmetry exactly
    const SmoothGroupFunction f = random_group_fn(rng);
    for (int i = 0; i < 3; ++i) {
        CartanPoint h;
        h.k = 1;
        h.t = {uniform(rng, 0.3, 2.0)};
        h.theta = {uniform(rng, -PI, PI)};
        CartanPoint hm = h;
        hm.t[0] = -h.t[0];
        const cplx a = harish_transform(f, 1, h, cfg);
        const cplx b = harish_transform(f, 1, hm, cfg);
        CHECK(std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(a)));
    }

    // conjugating the integrand relabels the orbit: the transform is unchanged
    // up to quadrature error; conjugation boosts both the window tail (longer
    // s range) and the angular frequency content (denser u grid)
    LabConfig wide = cfg;
    wide.s_max = 5.0;
    wide.n_s = 64;
    wide.n_angle = 64;
    for (int k = 0; k <= 1; ++k) {
        CartanPoint h;
        if (k == 0) {
            h.k = 0;
            h.phi = {1.2};
            h.psi = {-0.5};
        } else {
            h.k = 1;
            h.t = {0.9};
            h.theta = {0.4};
        }
        const cplx base = harish_transform(f, k, h, wide);
        for (int i = 0; i < 2; ++i) {
            const Mat2 z = realize(random_point11(rng, 0.8));
            const Mat2 zi = group_inverse(z);
            const cplx moved = harish_transform_fn(
                [&](const Mat2& g) { return f(mat_mul(z, mat_mul(g, zi))); }, k, h, wide);
            CHECK(std::abs(moved - base) / std::abs(base) < 5e-3);
        }
    }

    // refusals
    {
        CartanPoint h;
        h.k = 1;
        h.t = {0.01};
        h.theta = {0.0};
        CHECK_THROWS_AS(harish_transform(f, 1, h, cfg), std::domain_error);
        CartanPoint h0;
        h0.k = 0;
        h0.phi = {0.1};
        h0.psi = {0.2};
        CHECK_THROWS_AS(harish_transform(f, 1, h0, cfg), std::domain_error);
        CartanPoint bad;
        bad.k = 0;
        bad.phi = {0.1, 0.2};
        bad.psi = {0.3};
        CHECK_THROWS(harish_transform(f, 0, bad, cfg));
    }
}

TEST_CASE("Weyl integration formula calibrates and validates on held-out functions") {
    const WeylReport& wr = cached_weyl();
    CHECK(wr.nu0 > 0.0);
    CHECK(wr.nu1 > 0.0);

    Rng rng(53);
    std::vector<SmoothGroupFunction> valid;
    for (int i = 0; i < 5; ++i) valid.push_back(random_group_fn(rng));
    const WeylReport full = weyl_integration_check(calib_set(), valid, LabConfig{});
    REQUIRE(full.rel_errors.size() == 5);
    for (double e : full.rel_errors) CHECK(e < 0.02);

    // proportional calibration functions cannot pin down two constants
    SmoothGroupFunction f = random_group_fn(rng);
    CHECK_THROWS_AS(weyl_integration_check({f, scale_fn(f, 2.0)}, {}, LabConfig{}),
                    std::runtime_error);
}

TEST_CASE("transform lift stays in the class and reproduces held-out samples") {
    Rng rng(67);
    const WeylReport& wr = cached_weyl();
    const SmoothGroupFunction f = random_group_fn(rng);
    FitReport fr;
    const XiFamily fam = build_xi_family(f, wr.nu0, wr.nu1, LabConfig{}, &fr);
    CHECK(fr.rel_rms0 < 0.01);
    CHECK(fr.rel_rms1 < 0.01);
    CHECK(fr.offgrid_rel0 < 0.01);
    CHECK(fr.offgrid_rel1 < 0.01);
    // coefficients decay toward the band edge
    CHECK(fr.edge_ratio0 < 0.05);
    CHECK(fr.edge_ratio1 < 0.05);
    CHECK_FALSE(fam.member(0).terms.empty());
    CHECK_FALSE(fam.member(1).terms.empty());
    fam.validate();  // parity class of both members

    // the two pairing routes agree on the fitted family
    const GroupShape s(1, 1);
    for (int r = 0; r <= 1; ++r) {
        const PairingResult a = theta_r_pairing(s, r, fam);
        const PairingResult b = theta_r_from_classes(s, r, fam, 40);
        CHECK(std::abs(a.value - b.value) < 1e-6 * std::max(1.0, std::abs(a.value)));
    }

    // the zero function lifts to the zero family, exactly
    const XiFamily zfam = build_xi_family(SmoothGroupFunction{}, wr.nu0, wr.nu1, LabConfig{});
    CHECK(zfam.member(0).terms.empty());
    CHECK(zfam.member(1).terms.empty());
}

TEST_CASE("projector sum collapses to a constant multiple of the identity evaluation") {
    const WeylReport& wr = cached_weyl();
    Rng rng(83);
    std::vector<SmoothGroupFunction> fns;
    for (int i = 0; i < 5; ++i) fns.push_back(random_group_fn(rng));
    const CompletenessReport rep = completeness_check(calib_set(), fns, LabConfig{});
    REQUIRE(rep.ratios.size() == 5);
    CHECK(rep.spread < 0.02);
    CHECK(std::abs(rep.m_star.imag()) < 1e-4 * std::abs(rep.m_star));
    MESSAGE("estimated M_* = ", rep.m_star.real(), " (spread ", rep.spread, ")");

    // doubling the function doubles the sum and leaves the ratio identical
    const CompletenessReport dbl =
        completeness_check(calib_set(), {fns[0], scale_fn(fns[0], 2.0)}, LabConfig{});
    CHECK(dbl.sums[1] == 2.0 * dbl.sums[0]);
    CHECK(dbl.ratios[0] == dbl.ratios[1]);

    // a function vanishing at the identity pairs to (nearly) zero; built from
    // Re(a) - 1 so the conjugation average does not kill it outright
    SmoothGroupFunction f0;
    f0.terms.push_back({cplx(1.0, 0.0), {1, 0, 0, 0, 0, 0, 0, 0}, 0.7});
    f0.terms.push_back({cplx(-1.0, 0.0), {0, 0, 0, 0, 0, 0, 0, 0}, 0.7});
    const XiFamily fam0 = build_xi_family(f0, wr.nu0, wr.nu1, LabConfig{});
    const GroupShape s(1, 1);
    const cplx t0 = theta_r_pairing(s, 0, fam0).value;
    const cplx t1 = theta_r_pairing(s, 1, fam0).value;
    const double scale = std::max(std::abs(t0), std::abs(t1));
    REQUIRE(scale > 1e-3);
    CHECK(std::abs(t0 + t1) < 0.02 * scale);
}
