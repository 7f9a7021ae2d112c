#include "pseudospec/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace pseudospec {

// ---------- Gauss-Hermite ----------

GaussHermite::GaussHermite(int order) {
    // Newton iteration on physicists' Hermite polynomials, built from the
    // three-term recurrence in the scaled form ~H_k = H_k / sqrt(2^k k! sqrt(pi))
    // to avoid overflow.  Initial guesses per Stroud & Secrest.
    const int n = order;
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    double x = 0.0;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        if (i == 0)
            x = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            x -= 1.14 * std::pow(double(n), 0.426) / x;
        else if (i == 2)
            x = 1.86 * x - 0.86 * nodes[n - 1];
        else if (i == 3)
            x = 1.91 * x - 0.91 * nodes[n - 2];
        else
            x = 2.0 * x - nodes[n - i + 1];

        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = std::pow(PI, -0.25), p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = x * std::sqrt(2.0 / (k + 1.0)) * p1 - std::sqrt(double(k) / (k + 1.0)) * p2;
            }
            dp = std::sqrt(2.0 * n) * p1;  // d ~H_n/dx = sqrt(2n) ~H_{n-1}
            double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15 * (1.0 + std::abs(x))) break;
        }
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = 2.0 / (dp * dp);
        weights[i] = weights[n - 1 - i];
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;
}

double integrate_gauss_hermite(const std::function<double(double)>& f, double sigma,
                               const GaussHermite& gh) {
    // x = sqrt(sigma) t
    const double s = std::sqrt(sigma);
    double acc = 0.0;
    for (size_t i = 0; i < gh.nodes.size(); ++i)
        acc += gh.weights[i] * f(gh.nodes[i] / s);
    return acc / s;
}

double gaussian_moment(int d, double sigma) {
    if (d % 2 == 1) return 0.0;
    const int m = d / 2;
    // \int t^{2m} e^{-sigma t^2} dt = Gamma(m+1/2) / sigma^{m+1/2}
    double gamma_half = std::sqrt(PI);  // Gamma(1/2)
    for (int j = 0; j < m; ++j) gamma_half *= (j + 0.5);
    return gamma_half * std::pow(sigma, -(m + 0.5));
}

// ---------- adaptive ----------

QuadDefaults& quad_defaults() {
    static QuadDefaults d;
    return d;
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double tol, int max_depth) {
    if (tol < 0.0) tol = quad_defaults().adaptive_tol;
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, max_depth, tol, &err);
    return {v, err};
}

// ---------- stable kernels ----------

double t_coth(double t, double s) {
    const double x = s * t;
    if (std::abs(x) < 1e-2) {
        const double x2 = x * x;
        // x coth x = 1 + x^2/3 - x^4/45 + 2 x^6/945 - ...
        return (1.0 + x2 / 3.0 - x2 * x2 / 45.0 + 2.0 * x2 * x2 * x2 / 945.0) / s;
    }
    return t / std::tanh(x);
}

double t_csch(double t, double s) {
    const double x = s * t;
    if (std::abs(x) < 1e-2) {
        const double x2 = x * x;
        // x / sinh x = 1 - x^2/6 + 7 x^4/360 - 31 x^6/15120 + ...
        return (1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0 - 31.0 * x2 * x2 * x2 / 15120.0) / s;
    }
    return t / std::sinh(x);
}

double t_geom_tail(double t, double u0, double step) {
    // t e^{-u0 t} / (1 - e^{-step t});  t/(1-e^{-x*t... }) handled via
    // y/(1-e^{-y}) = 1 + y/2 + y^2/12 - y^4/720 + y^6/30240 - ...
    const double y = step * t;
    double base;
    if (std::abs(y) < 1e-2) {
        const double y2 = y * y;
        base = (1.0 + y / 2.0 + y2 / 12.0 - y2 * y2 / 720.0) / step;
    } else {
        base = t / (1.0 - std::exp(-y));
    }
    return base * std::exp(-u0 * t);
}

// ---------- monomial x weight integrals ----------

QuadResult integrate_monomial_weight(int d, double sigma, const Weight& w, double tol) {
    if (sigma <= 0.0) throw std::domain_error("integrate_monomial_weight: sigma must be > 0");
    const bool monomial_odd = (d % 2 == 1);
    if (monomial_odd != w.odd()) return {0.0, 0.0};  // odd total integrand over R

    if (w.kind == Weight::Plain) return {gaussian_moment(d, sigma), 0.0};

    // upper cutoff: Gaussian tail e^{-sigma T^2} below 2e-16 relative,
    // with slack for the polynomial factor
    double T = std::sqrt(40.0 / sigma) + 2.0;
    if (w.kind == Weight::ExpDecay || w.kind == Weight::SgnExpDecay) {
        // decay may come from e^{-u t} alone when u > 0; keep the Gaussian cutoff anyway
        T = std::min(T, 80.0 / std::max(w.param, 1e-9) + std::sqrt(40.0 / sigma));
    }

    std::function<double(double)> g;
    switch (w.kind) {
        case Weight::ExpDecay: {
            const double u = w.param;
            g = [d, sigma, u](double t) {
                return std::pow(t, d) * std::exp(-sigma * t * t - u * t);
            };
            break;
        }
        case Weight::SgnExpDecay: {
            const double u = w.param;
            g = [d, sigma, u](double t) {  // t > 0, sgn = +1
                return std::pow(t, d) * std::exp(-sigma * t * t - u * t);
            };
            break;
        }
        case Weight::Coth: {
            const double s = w.param;
            g = [d, sigma, s](double t) {  // d odd here: t^d coth = t^{d-1} * (t coth)
                return std::pow(t, d - 1) * t_coth(t, s) * std::exp(-sigma * t * t);
            };
            break;
        }
        case Weight::Tanh: {
            const double s = w.param;
            g = [d, sigma, s](double t) {
                return std::pow(t, d) * std::tanh(s * t) * std::exp(-sigma * t * t);
            };
            break;
        }
        case Weight::Csch: {
            const double s = w.param;
            g = [d, sigma, s](double t) {
                return std::pow(t, d - 1) * t_csch(t, s) * std::exp(-sigma * t * t);
            };
            break;
        }
        case Weight::GeomTail: {
            const double u0 = w.param, step = w.param2;
            g = [d, sigma, u0, step](double t) {
                return std::pow(t, d - 1) * t_geom_tail(t, u0, step) * std::exp(-sigma * t * t);
            };
            break;
        }
        default:
            throw std::logic_error("unhandled weight kind");
    }

    QuadResult r = integrate_adaptive(g, 0.0, T, tol);
    r.value *= 2.0;
    r.error *= 2.0;
    r.error += std::exp(-sigma * T * T);  // certified tail slack
    return r;
}

} // namespace pseudospec
