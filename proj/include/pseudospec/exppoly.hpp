#pragma once

#include "pseudospec/cartan.hpp"
#include "pseudospec/quadrature.hpp"

#include <json.hpp>
#include <map>

namespace pseudospec {

// monomial exponent vector (one entry per t-variable) -> complex coefficient
using TPoly = std::map<std::vector<int>, cplx>;

TPoly poly_const(int k, cplx c = 1.0);
TPoly poly_add(const TPoly& a, const TPoly& b);
TPoly poly_mul(const TPoly& a, const TPoly& b);
TPoly poly_scale(const TPoly& a, cplx c);
TPoly poly_diff(const TPoly& a, int var);          // d/dt_var, 0-based
TPoly poly_shift(const TPoly& a, int var);         // multiply by t_var
TPoly poly_conj(const TPoly& a);
cplx poly_eval(const TPoly& a, const std::vector<double>& t);

// one summand: coeff * e^{i a.phi} e^{i b.psi} e^{i m.theta} * poly(t) * prod_g e^{-w_g t_g^2}
struct ExpTerm {
    cplx coeff = 1.0;
    std::vector<int> a;         // size p-k
    std::vector<int> b;         // size q-k
    std::vector<int> m;         // size k
    TPoly poly;                 // exponents sized k
    std::vector<double> widths; // size k, all > 0 whenever k > 0
};

// finite sums of such terms; closed under +, *, X_j, and conjugation
struct ExpPoly {
    int p = 1, q = 1, k = 0;
    std::vector<ExpTerm> terms;

    ExpPoly() = default;
    ExpPoly(int p_, int q_, int k_) : p(p_), q(q_), k(k_) {}

    int n() const { return p + q; }
    bool compatible(const ExpPoly& o) const { return p == o.p && q == o.q && k == o.k; }
    void check_term(const ExpTerm& t) const;

    ExpPoly& add_term(ExpTerm t);   // validates and appends (no normalization)
    void normalize(double drop_tol = 0.0);  // merge identical keys, drop tiny terms
    bool is_zero(double tol = 0.0) const;
    double max_coeff() const;

    ExpPoly conj() const;
};

ExpPoly operator+(const ExpPoly& f, const ExpPoly& g);
ExpPoly operator-(const ExpPoly& f, const ExpPoly& g);
ExpPoly operator*(const ExpPoly& f, const ExpPoly& g);
ExpPoly operator*(cplx c, const ExpPoly& f);

// the first-order operators attached to the eigenvalue list, j 1-based in E-order:
//   j in 1..p-k               : d/(i d phi_j)
//   j in p-k+1..p-k+k         : (1/2)(d/dt_g + d/(i d theta_g)),  g = j-(p-k)
//   j in p+1..p+q-k           : d/(i d psi_b),                    b = j-(p-k)-k
//   j in p+q-k+1..n           : (1/2)(-d/dt_g + d/(i d theta_g)), g = j-(p+q-k)
ExpPoly apply_X(int j, const ExpPoly& f);

// prod_{j<l} (X_j - X_l) applied factor by factor (all X_j commute here)
ExpPoly apply_vandermonde_op(const GroupShape& shape, int k, const ExpPoly& f);

// formal polynomial in the commuting symbols X_1..X_n
struct DiffOp {
    int n = 1;
    std::map<std::vector<int>, cplx> monomials;  // powers of X_1..X_n -> coefficient

    static DiffOp one(int n);
    static DiffOp symbol(int n, int j);          // X_j, 1-based
    static DiffOp vandermonde(int n);            // expanded prod_{j<l}(X_j - X_l)
};

DiffOp operator+(const DiffOp& a, const DiffOp& b);
DiffOp operator-(const DiffOp& a, const DiffOp& b);
DiffOp operator*(const DiffOp& a, const DiffOp& b);

ExpPoly apply(const DiffOp& op, const ExpPoly& f);

cplx eval(const ExpPoly& f, const CartanPoint& h);

// integral over all t-variables with one weight per t_g; requires every phase
// (a, b, m) to vanish.  For Coth-kind weights the integrand must be odd in that
// t_g (principal-value pairing); enforced up to odd_tol relative to the largest
// coefficient unless require_odd = false.
struct PairResult {
    cplx value = 0.0;
    double error = 0.0;
};
PairResult integrate_t(const ExpPoly& f, const std::vector<Weight>& weights,
                       bool require_odd = true, double odd_tol = 1e-9);

void to_json(nlohmann::json& j, const ExpPoly& f);
void from_json(const nlohmann::json& j, ExpPoly& f);

} // namespace pseudospec
