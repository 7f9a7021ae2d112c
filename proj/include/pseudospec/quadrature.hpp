#pragma once

#include "pseudospec/util.hpp"

#include <functional>

namespace pseudospec {

// ---------- Gauss-Hermite ----------

struct GaussHermite {
    std::vector<double> nodes;    // roots of H_n
    std::vector<double> weights;  // for \int e^{-x^2} f(x) dx ~ sum w_i f(x_i)
    explicit GaussHermite(int order);
};

// \int_R f(t) e^{-sigma t^2} dt, exact for polynomial f up to degree 2*order-1
double integrate_gauss_hermite(const std::function<double(double)>& f, double sigma,
                               const GaussHermite& gh);

// exact Gaussian moments: \int_R t^d e^{-sigma t^2} dt (0 for odd d);
// uses Gamma(m + 1/2) = (2m)! sqrt(pi) / (4^m m!)
double gaussian_moment(int d, double sigma);

// ---------- adaptive Gauss-Kronrod on [a,b] ----------

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
};

// process-wide defaults picked up when a caller passes a negative tolerance
// (or none); the CLI seeds these from its runtime configuration
struct QuadDefaults {
    double adaptive_tol = 1e-12;
    int hermite_order = 64;
};
QuadDefaults& quad_defaults();

// wraps boost::math::quadrature::gauss_kronrod<double,15>
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double tol = -1.0, int max_depth = 15);

// ---------- singular weight kernels, series-stable near 0 ----------
// every t-integrand in this project pairs an odd power of t with an odd
// kernel, so only the products below are ever evaluated; each is smooth at 0.

// t * coth(s t)
double t_coth(double t, double s);
// t / sinh(s t)
double t_csch(double t, double s);
// t * tanh(s t)  (not singular; provided for symmetry)
inline double t_tanh(double t, double s) { return t * std::tanh(s * t); }
// t * e^{-u0 t} / (1 - e^{-step t}),  the geometric tail sum_{u = u0, u0+step, ...} t e^{-u t}
double t_geom_tail(double t, double u0, double step);

// ---------- weight descriptors used by ExpPoly::integrate_t ----------

struct Weight {
    enum Kind {
        Plain,         // e^{0}, Gaussian-only integral over R
        ExpDecay,      // e^{-u |t|},        even;  param = u >= 0
        SgnExpDecay,   // sgn(t) e^{-u |t|}, odd;   param = u >= 0
        Coth,          // coth(s t),         odd;   param = s > 0
        Tanh,          // tanh(s t),         odd;   param = s > 0
        Csch,          // 1 / sinh(s t),     odd;   param = s > 0
        GeomTail,      // sgn(t) e^{-u0 |t|} / (1 - e^{-step |t|}), odd; params u0, step
    } kind = Plain;
    double param = 0.0;
    double param2 = 0.0;  // step for GeomTail

    static Weight plain() { return {Plain, 0.0, 0.0}; }
    static Weight exp_decay(double u) { return {ExpDecay, u, 0.0}; }
    static Weight sgn_exp_decay(double u) { return {SgnExpDecay, u, 0.0}; }
    static Weight coth(double s) { return {Coth, s, 0.0}; }
    static Weight coth_half() { return {Coth, 0.5, 0.0}; }
    static Weight tanh(double s) { return {Tanh, s, 0.0}; }
    static Weight tanh_half() { return {Tanh, 0.5, 0.0}; }
    static Weight csch(double s) { return {Csch, s, 0.0}; }
    static Weight geom_tail(double u0, double step) { return {GeomTail, u0, step}; }

    bool odd() const { return kind == SgnExpDecay || kind == Coth || kind == Tanh ||
                              kind == Csch || kind == GeomTail; }
};

// \int_R t^d w(t) e^{-sigma t^2} dt.  Zero when the integrand is odd;
// otherwise 2 * \int_0^inf with the singularity-free product forms.
QuadResult integrate_monomial_weight(int d, double sigma, const Weight& w,
                                     double tol = -1.0);

} // namespace pseudospec
