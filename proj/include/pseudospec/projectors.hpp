#pragma once

// Spectral-projector machinery: the density factors on the tempered dual, the
// three families of invariant pairings (per spectral rank, per discrete class,
// per discrete class with compact cycle labels), and the summation/limit
// oracles that certify the distributional identities behind them.
//
// All pairings act on XiFamily data: per Cartan piece H_k an exponential
// polynomial standing for the wrapped transform Xi_k f of a test function f on
// the group.  Every pairing returns the raw functional value (one global
// normalization constant M_* multiplies all of them; it is never divided out
// here — the small-group laboratory estimates it empirically).

#include <map>
#include <vector>

#include "pseudospec/characters.hpp"
#include "pseudospec/exppoly.hpp"

namespace pseudospec {

// ---------- density factors ----------

// -(i/2) coth(pi rho / 2) for even m, -(i/2) tanh(pi rho / 2) for odd m;
// odd in rho, pole at rho = 0 in the even case.
cplx plancherel_density_factor(int m, double rho);

// t-kernel obtained by closing the rho-integral / index sums:
// coth(t) for even m, 1/sinh(t) for odd m (as a quadrature weight).
Weight cycle_kernel_weight(int m);

// ---------- pairing plumbing ----------

struct CutoffReport {
    bool angular_exact = true;  // every discrete phase selection fell inside the cutoff
    int series_cutoff = 0;      // discrete cutoff in force (0 = not applicable)
    double t_tail_bound = 0.0;  // bound on dropped t-tails (geometric tails folded in exactly)
};

struct PairingResult {
    cplx value = 0.0;
    double error = 0.0;  // accumulated quadrature error estimate
    CutoffReport cutoffs;
    std::vector<std::pair<int, cplx>> k_contributions;  // per-k breakdown (k, term)
    bool warned_unsorted_m = false;
};

// ---------- test-function families on the Cartan pieces ----------

// Per k = r_min..q one ExpPoly on H_k.  Members are expected to sit in the
// skew symmetry class (skew under both angle-permutation factors, invariant
// under z-pair permutations and t-reflections; in particular even in each
// t_gamma).  The pairings differentiate them first unless already_vandermonde.
struct XiFamily {
    GroupShape shape{1, 1};
    int r_min = 0;
    std::vector<ExpPoly> members;  // index k - r_min
    bool already_vandermonde = false;

    const ExpPoly& member(int k) const;
    ExpPoly g(int k) const;  // Vandermonde-operator image of member(k)
    void validate(double tol = 1e-8) const;
};

// pullback along the Weyl action: eval(result, h) == eval(f, weyl_act(w.inverse(), h))
ExpPoly expoly_weyl_act(const GroupShape& s, int k, const WeylElement& w, const ExpPoly& f);

// average over W_k with the angle-permutation sign character; lands in the
// skew class (projection, identity on the class)
ExpPoly project_skew_class(const GroupShape& s, int k, const ExpPoly& f);

struct FamilyOptions {
    int terms_per_member = 3;
    int phase_band = 2;      // |a|, |b|, |m| <= phase_band
    int max_t_degree = 4;    // even degrees only
    double min_width = 0.6;
    double max_width = 1.4;
    bool constrain_even_m_const = false;  // even-m terms get no constant monomial
                                          // (kills the diagonal boundary term in
                                          //  the rank-0 refinement sum)
};

XiFamily random_xi_family(const GroupShape& s, int r_min, Rng& rng,
                          const FamilyOptions& opt = {});

// JSON schema {p, q, r_min, already_vandermonde, members: [ExpPoly...]}
void to_json(nlohmann::json& j, const XiFamily& fam);
void from_json(const nlohmann::json& j, XiFamily& fam);

// ---------- the three projector pairings ----------

// Per spectral rank r:
//   S * sum_{k=r..q} 2^{n-2k} pi^{n-k} k!/((k-r)! r!) omega_k *
//       <G_k, prod delta(phi) prod delta(psi)
//             prod_gamma (coth(t/2) delta(theta) + tanh(t/2) delta(theta - pi))>
// with S = (-1)^{n(n-1)/2 + pq + qr + r(r-1)/2} and G_k the Vandermonde image.
PairingResult theta_r_pairing(const GroupShape& s, int r, const XiFamily& fam);

// Specialization at r = q in closed form: (-1)^{p(p-1)/2 + q^2} 2^{p-q} pi^p
// omega_q times the k = q delta pairing.  Agrees with theta_r_pairing(q).
PairingResult theta_r_most_continuous(const GroupShape& s, const XiFamily& fam);

// Per discrete class (A; c):
//   S * sum_{k=r..q} omega_k <G_k, zeta°_k>,
// zeta°_k summed over the A-fixed matchings with bare z-pairs: angle arcs are
// plain phases, chains carry sgn(t) e^{-|dc||t| + i(sum c)theta}, every bare
// z-pair carries pi (coth(t/2) delta(theta) + tanh(t/2) delta(theta - pi)).
PairingResult theta_Ac_pairing(const Signature& sig, const XiFamily& fam);

// Per discrete class with cycle labels (A; c, m):
//   S * sum_{k=r..q} omega_k <G_k, zeta_k>,
// zeta_k = (1 / prod u_iota!) * sum over A-fixed matchings with labeled cycle
// placements (no matching sign), cycles carrying e^{i m_s theta} K_{m_s}(t)
// with K_m = coth (m even) / csch (m odd); u_iota are the multiplicities of
// repeated m entries.  rho plays no role here.
PairingResult theta_Acm_pairing(const Signature& sig, const XiFamily& fam);

// Rank-one-group refinement sum: adds theta_Ac_pairing over every discrete
// class of rank r with |c_i| <= c_band (ordered tuples against a fixed
// canonical A enumerate each class exactly once on U(1,1)) and folds the exact
// geometric tails of the chain sums beyond the band.  Converges to
// theta_r_pairing; only p = q = 1 is supported.
PairingResult theta_r_from_classes(const GroupShape& s, int r, const XiFamily& fam, int c_band);

// ---------- limit/summation oracles ----------

struct LemmaReport {
    cplx lhs = 0.0;   // series / iterated side at the final cutoff
    cplx rhs = 0.0;   // closed / delta side
    double error = 0.0;       // |lhs - rhs|
    double quad_error = 0.0;  // accumulated quadrature error estimate
    std::vector<std::pair<int, double>> error_curve;  // cutoff -> |lhs-rhs|
    double decay_exponent_u = 0.0;  // fitted power along the decay direction
    double decay_exponent_v = 0.0;  // fitted power along the oscillation direction
};

// weight(pi rho/2) route vs 2i K(t) route for a 1-D odd poly-Gaussian
// (tanh_variant = false: coth(pi rho/2) <-> 2i coth(t);
//  tanh_variant = true : tanh(pi rho/2) <-> 2i / sinh(t)).
LemmaReport lemma31_check(const ExpPoly& f_odd, bool tanh_variant);

// index-sum over theta-modes with the density factors vs the half-line
// delta pairing pi * int_0^inf [f(t,0) coth(t/2) + f(t,pi) tanh(t/2)] dt,
// on functions odd in t; reports the error at each cutoff in M_values.
LemmaReport lemma32_check(const ExpPoly& f, const std::vector<int>& M_values);

// double index-sum of sgn(t) e^{-|a-b||t| + i(a+b) theta} vs the same delta
// side, with exact geometric tails beyond the cutoff; also fits the term-decay
// exponents in a-b (Laplace direction) and a+b (mode direction).
LemmaReport lemma33_check(const ExpPoly& f, int N_cut);

// partial Fourier sums of a trigonometric polynomial recover 2 pi f(0);
// coeffs maps the mode to its coefficient.
LemmaReport lemma34_check(const std::map<int, cplx>& coeffs, int K_cut);

// ---------- sigma-independent summation ----------

struct YsigmaReport {
    std::vector<cplx> per_sigma;  // iterated values, matching enumerate_omega_tilde order
    cplx closed_form = 0.0;       // 2^{n-2k+r} pi^{n-k} delta/coth pairing
    double max_pairwise = 0.0;    // max |Y_i - Y_j|
    double max_vs_closed = 0.0;   // max |Y_i - closed|
    double scale = 0.0;           // max magnitude, for relative reading
    double quad_error = 0.0;
};

// For every matching sigma of the (r,k) merged family: iterate the free sums
// (angle modes exactly, chain mode pairs with exact geometric tails, cycle
// labels with the density-factor rho-integral) against G and compare with the
// sigma-independent closed form.
YsigmaReport ysigma_check(const GroupShape& s, int r, int k, const ExpPoly& G,
                          int chain_cut = 40);

}  // namespace pseudospec
