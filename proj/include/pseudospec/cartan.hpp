#pragma once

#include "pseudospec/util.hpp"

#include <functional>
#include <json.hpp>

namespace pseudospec {

struct GroupShape {
    int p = 1;
    int q = 1;
    GroupShape() = default;
    GroupShape(int p_, int q_) : p(p_), q(q_) {
        if (q < 1 || p < q) throw std::domain_error("GroupShape requires p >= q >= 1");
    }
    int n() const { return p + q; }
};

// A point of the Cartan subgroup H_k in coordinates (phi, psi, t, theta);
// k compact-angle pairs are replaced by hyperbolic pairs z = t + i theta.
struct CartanPoint {
    int k = 0;
    std::vector<double> phi;    // p - k angles
    std::vector<double> psi;    // q - k angles
    std::vector<double> t;      // k reals
    std::vector<double> theta;  // k angles

    CartanPoint() = default;
    CartanPoint(int k_, std::vector<double> phi_, std::vector<double> psi_,
                std::vector<double> t_, std::vector<double> theta_);

    void check_shape(const GroupShape& s) const;
};

// W_k = S_{p-k} x S_{q-k} x (S_k |x Z_2^k); reflections negate t_gamma only.
struct WeylElement {
    std::vector<int> perm_phi;   // 0-based images
    std::vector<int> perm_psi;
    std::vector<int> perm_z;
    std::vector<bool> refl;      // refl[gamma]: negate t_gamma

    static WeylElement identity(const GroupShape& s, int k);
    WeylElement inverse() const;
};

// w2 after w1 as actions on points: act(compose(w2, w1), h) == act(w2, act(w1, h))
WeylElement compose(const WeylElement& w2, const WeylElement& w1);

// full enumeration of W_k (order (p-k)! (q-k)! k! 2^k)
std::vector<WeylElement> weyl_elements(const GroupShape& s, int k);

// eigenvalue list in the fixed order:
//   e^{i phi_1..phi_{p-k}}, e^{z_1..z_k}, e^{i psi_1..psi_{q-k}}, e^{-conj(z_1..z_k)}
std::vector<cplx> eigenvalues(const GroupShape& s, const CartanPoint& h);

cplx vandermonde(const std::vector<cplx>& values);
cplx vandermonde_at(const GroupShape& s, const CartanPoint& h);

long long weyl_order(const GroupShape& s, int k);
Rational omega(const GroupShape& s, int k);   // 1 / #W_k, exact

CartanPoint weyl_act(const WeylElement& w, const CartanPoint& h);

// random points, optionally bounded away from the singular loci
// (t_gamma = 0, coincident unimodular eigenvalues)
CartanPoint random_point(const GroupShape& s, int k, Rng& rng, double regular_margin = 0.0);

struct SymmetryReport {
    bool epsilon_symmetric = false;        // invariant under S-factors, sign flip under R_gamma
    bool epsilon_skew_symmetric = false;   // skew under S_{p-k} x S_{q-k}, invariant under S_k |x Z_2^k
    double max_violation_symmetric = 0.0;
    double max_violation_skew = 0.0;
    double scale = 0.0;                    // max |f| over the sample, for relative reading
};

SymmetryReport symmetry_type(const GroupShape& s, int k,
                             const std::function<cplx(const CartanPoint&)>& f,
                             int samples, Rng& rng, double tol = 1e-9);

void to_json(nlohmann::json& j, const CartanPoint& h);
void from_json(const nlohmann::json& j, CartanPoint& h);

} // namespace pseudospec
