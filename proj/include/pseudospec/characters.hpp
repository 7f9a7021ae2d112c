#pragma once

// Distribution characters on the Cartan pieces H_k, assembled from pairing
// diagrams, together with their smooth companions and the differential
// identity connecting the two.
//
// For a signature (A; c, m, rho) of rank r on U(p,q) and 0 <= k <= q:
//
//   kappa_k       alternating sum over the diagram family attached to A;
//                 arcs contribute unimodular phases, chains contribute the
//                 two-sided decay factor xi, cycles contribute
//                 e^{i m theta} (e^{i rho t} + e^{-i rho t}).
//   kappa_tilde_k sum of kappa_k over all admissible A; equivalently a single
//                 alternating sum over merged diagrams (both routes exposed).
//   eta_k         signless sum over merged diagrams; chains carry
//                 sgn(t) e^{-|dc| |t|} and cycles e^{i m theta} times
//                 (e^{i rho t} - e^{-i rho t}).  Smooth companion of
//                 kappa_tilde away from t = 0.
//
// On the open chamber where each sgn(t_gamma) is fixed, every one of these
// functions is a finite sum of joint eigenfunctions of the commuting operators
// X_1..X_n.  chamber_terms materializes that expansion, which lets the
// Vandermonde operator Delta(X_1..X_n) act exactly (multiplication by the
// Vandermonde of the eigenvalue vector).  That is how the identity
//
//   Delta_k(X) eta_k = identity_prefactor * parameter_vandermonde * kappa_tilde_k
//
// is verified pointwise.

#include <complex>
#include <vector>

#include "pseudospec/cartan.hpp"
#include "pseudospec/diagrams.hpp"
#include "pseudospec/util.hpp"

namespace pseudospec {

// global sign in front of kappa_k / kappa_tilde_k: (-1)^{k(k-1)/2 + pq + kq}
int kappa_prefactor(const GroupShape& s, int k);

// sign relating Delta_k(X) eta_k to kappa_tilde_k: (-1)^{pq + qr + r(r-1)/2}
int identity_prefactor(const GroupShape& s, int r);

// chain weight: sgn(c_j - c_l) * exp(-|c_j - c_l| |t| + i (c_j + c_l) theta)
// for z = t + i theta; j, l are 1-based positions into c and must differ.
cplx xi(const std::vector<int>& c, int j, int l, cplx z);

// character attached to the signature's own A (zero function for k < r)
cplx kappa_k(const Signature& sig, int k, const CartanPoint& h);

enum class TildeRoute {
    SumOverA,  // sum kappa_k over every admissible angle subset A
    Merged,    // single signed sum over merged diagrams
};

cplx kappa_tilde_k(const Signature& sig, int k, const CartanPoint& h,
                   TildeRoute route = TildeRoute::Merged);

// smooth companion; defined off the walls t_gamma = 0
cplx eta_k(const Signature& sig, int k, const CartanPoint& h);

// ---------- chamber expansion into joint eigenfunctions ----------

// One pure exponential, recorded through its eigenvalue vector nu (length n,
// eigenvalue order).  Angle slots contribute e^{i nu phi}; a (z, zbar) slot
// pair (nu_z, nu_zb) contributes e^{(nu_z - nu_zb) t + i (nu_z + nu_zb) theta}.
struct PureExpTerm {
    cplx coeff;
    std::vector<cplx> nu;
};

enum class ChainMode {
    SgnT,  // sgn(t) e^{-|dc| |t| + i (sum c) theta}   (eta-type)
    Xi,    // sgn(dc) e^{-|dc| |t| + i (sum c) theta}   (kappa-type)
};

enum class CycleMode {
    Difference,  // e^{i m theta} (e^{i rho t} - e^{-i rho t})   (eta-type)
    Sum,         // e^{i m theta} (e^{i rho t} + e^{-i rho t})   (kappa-type)
};

// Expansion of one diagram's product of factors on the chamber with the given
// sign pattern (chamber[gamma] = +-1 for each of the k t-coordinates).  The
// diagram sign is folded into the coefficients when requested; global
// prefactors are not.
std::vector<PureExpTerm> chamber_terms(const Diagram& d, const Signature& sig, int k,
                                       const std::vector<int>& chamber, ChainMode chain_mode,
                                       CycleMode cycle_mode, bool include_diagram_sign);

// Full eta_k expansion on a chamber: signless sum over merged diagrams.
std::vector<PureExpTerm> eta_chamber_terms(const Signature& sig, int k,
                                           const std::vector<int>& chamber);

std::vector<int> chamber_of(const CartanPoint& h);

cplx eval_pure(const PureExpTerm& term, const GroupShape& s, int k, const CartanPoint& h);

// Vandermonde of the eigenvalue vector = exact action of Delta_k(X) on the term
cplx vandermonde_nu(const PureExpTerm& term);

// (Delta_k(X) eta_k)(h), evaluated via the chamber expansion at h's chamber
cplx apply_vandermonde_eta(const Signature& sig, int k, const CartanPoint& h);

// Vandermonde of the parameter vector in the order
//   c_1..c_{p-r}, d_1..d_r, c_{p-r+1}..c_{n-2r}, conj(d_1)..conj(d_r)
// with d_s = (m_s + i rho_s) / 2.
cplx parameter_vandermonde(const Signature& sig);

struct IdentityReport {
    int samples = 0;
    double max_rel_err = 0.0;
    double max_abs_lhs = 0.0;  // largest |Delta_k(X) eta_k| seen, for scale context
};

// Samples random regular points on H_k and compares Delta_k(X) eta_k against
// identity_prefactor * parameter_vandermonde * kappa_tilde_k.
IdentityReport check_vandermonde_identity(const Signature& sig, int k, int samples, Rng& rng);

}  // namespace pseudospec
