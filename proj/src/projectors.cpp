#include "pseudospec/projectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pseudospec {

namespace {

const cplx I(0.0, 1.0);
constexpr int FREE_PHASE = std::numeric_limits<int>::min();

// ---------- Fourier transform of t^d e^{-w t^2} ----------
// \int t^d e^{-w t^2} e^{i rho t} dt = P_d(rho) e^{-rho^2/(4w)};
// P_0 = sqrt(pi/w), P_{j+1} = -i (P_j' - rho/(2w) P_j).
std::map<int, cplx> fourier_monomial(int d, double w) {
    std::map<int, cplx> P{{0, std::sqrt(PI / w)}};
    for (int j = 0; j < d; ++j) {
        std::map<int, cplx> Q;
        for (const auto& [e, c] : P) {
            if (e >= 1) Q[e - 1] += -I * double(e) * c;
            Q[e + 1] += I * c / (2.0 * w);
        }
        P = std::move(Q);
    }
    return P;
}

// \int_R K(pi rho / 2) P_d(rho) e^{-rho^2/(4w)} d rho with K = coth (even
// kernel index) or tanh (odd); vanishing even/odd combinations are handled by
// the parity gate of the monomial integrator.
QuadResult rho_kernel_integral(int d, double w, bool odd_kernel, cplx* out) {
    const Weight kernel = odd_kernel ? Weight::tanh(PI / 2) : Weight::coth(PI / 2);
    const double sigma = 1.0 / (4.0 * w);
    cplx val = 0.0;
    double err = 0.0;
    for (const auto& [e, c] : fourier_monomial(d, w)) {
        const QuadResult r = integrate_monomial_weight(e, sigma, kernel);
        val += c * r.value;
        err += std::abs(c) * r.error;
    }
    *out = val;
    return {0.0, err};
}

void require_t_odd(const ExpPoly& f, const char* who) {
    const double scale = f.max_coeff();
    for (const auto& term : f.terms)
        for (const auto& [d, c] : term.poly)
            for (int e : d)
                if (e % 2 == 0 && std::abs(c * term.coeff) > 1e-9 * std::max(scale, 1e-300))
                    throw std::domain_error(std::string(who) + ": function must be odd in t");
}

// sum over the 2^k theta in {0, pi}^k sectors of
// <G, prod delta(phi) prod delta(psi)
//     prod (coth(t/2) delta(theta) + tanh(t/2) delta(theta - pi))>
PairResult delta_coth_pairing(const ExpPoly& G) {
    const int k = G.k;
    PairResult total;
    for (unsigned long pat = 0; pat < (1ul << k); ++pat) {
        ExpPoly H(G.p, G.q, k);
        std::vector<Weight> weights;
        for (int g = 0; g < k; ++g)
            weights.push_back((pat >> g) & 1 ? Weight::tanh_half() : Weight::coth_half());
        for (const auto& term : G.terms) {
            ExpTerm t;
            t.coeff = term.coeff;
            for (int g = 0; g < k; ++g)
                if ((pat >> g) & 1) t.coeff *= parity_sign(term.m[size_t(g)]);
            t.a.assign(term.a.size(), 0);
            t.b.assign(term.b.size(), 0);
            t.m.assign(term.m.size(), 0);
            t.poly = term.poly;
            t.widths = term.widths;
            H.add_term(std::move(t));
        }
        H.normalize();
        if (H.terms.empty()) continue;
        const PairResult pr = integrate_t(H, weights);
        total.value += pr.value;
        total.error += pr.error;
    }
    return total;
}

double theorem_sign(const GroupShape& s, int r) {
    const long long n = s.n();
    return parity_sign(n * (n - 1) / 2 + (long long)s.p * s.q + (long long)s.q * r +
                       (long long)r * (r - 1) / 2);
}

}  // namespace

// ---------- density factors ----------

cplx plancherel_density_factor(int m, double rho) {
    const bool even = ((m % 2) == 0);
    if (even && rho == 0.0)
        throw std::domain_error("plancherel_density_factor: pole at rho = 0 for even m");
    const double k = even ? 1.0 / std::tanh(PI * rho / 2.0) : std::tanh(PI * rho / 2.0);
    return cplx(0.0, -0.5) * k;
}

Weight cycle_kernel_weight(int m) {
    return (m % 2 == 0) ? Weight::coth(1.0) : Weight::csch(1.0);
}

// ---------- XiFamily ----------

const ExpPoly& XiFamily::member(int k) const {
    if (k < r_min || k > shape.q || size_t(k - r_min) >= members.size())
        throw std::domain_error("XiFamily: no member for this k");
    return members[size_t(k - r_min)];
}

ExpPoly XiFamily::g(int k) const {
    ExpPoly out = already_vandermonde ? member(k) : apply_vandermonde_op(shape, k, member(k));
    out.normalize();
    return out;
}

void XiFamily::validate(double tol) const {
    if ((int)members.size() != shape.q - r_min + 1)
        throw std::domain_error("XiFamily: members must cover k = r_min..q");
    Rng rng(20240817u);
    for (int k = r_min; k <= shape.q; ++k) {
        const ExpPoly& f = member(k);
        if (f.p != shape.p || f.q != shape.q || f.k != k)
            throw std::domain_error("XiFamily: member has wrong arity");
        if (f.is_zero(0.0)) continue;
        if (already_vandermonde) continue;  // differentiated members sit in the other class
        auto eval_f = [&](const CartanPoint& h) { return eval(f, h); };
        const SymmetryReport rep = symmetry_type(shape, k, eval_f, 6, rng, tol);
        if (!rep.epsilon_skew_symmetric)
            throw std::domain_error("XiFamily: member fails the skew-class symmetry check");
    }
}

ExpPoly expoly_weyl_act(const GroupShape& s, int k, const WeylElement& w, const ExpPoly& f) {
    if (f.p != s.p || f.q != s.q || f.k != k)
        throw std::domain_error("expoly_weyl_act: arity mismatch");
    ExpPoly out(f.p, f.q, k);
    for (const auto& term : f.terms) {
        ExpTerm t;
        t.coeff = term.coeff;
        t.a.assign(term.a.size(), 0);
        t.b.assign(term.b.size(), 0);
        t.m.assign(term.m.size(), 0);
        t.widths.assign(term.widths.size(), 0.0);
        for (size_t i = 0; i < term.a.size(); ++i) t.a[size_t(w.perm_phi[i])] = term.a[i];
        for (size_t i = 0; i < term.b.size(); ++i) t.b[size_t(w.perm_psi[i])] = term.b[i];
        for (size_t i = 0; i < term.m.size(); ++i) {
            t.m[size_t(w.perm_z[i])] = term.m[i];
            t.widths[size_t(w.perm_z[i])] = term.widths[i];
        }
        for (const auto& [d, c] : term.poly) {
            std::vector<int> nd(d.size(), 0);
            cplx nc = c;
            for (size_t i = 0; i < d.size(); ++i) {
                nd[size_t(w.perm_z[i])] = d[i];
                if (w.refl[i]) nc *= parity_sign(d[i]);
            }
            t.poly[nd] += nc;
        }
        out.add_term(std::move(t));
    }
    return out;
}

ExpPoly project_skew_class(const GroupShape& s, int k, const ExpPoly& f) {
    ExpPoly acc(f.p, f.q, k);
    const auto elems = weyl_elements(s, k);
    for (const auto& w : elems) {
        const double chi = double(permutation_sign(w.perm_phi) * permutation_sign(w.perm_psi));
        ExpPoly g = expoly_weyl_act(s, k, w, f);
        for (auto& term : g.terms) term.coeff *= chi / double(elems.size());
        for (auto& term : g.terms) acc.add_term(term);
    }
    acc.normalize(1e-14 * std::max(1.0, acc.max_coeff()));
    return acc;
}

XiFamily random_xi_family(const GroupShape& s, int r_min, Rng& rng, const FamilyOptions& opt) {
    XiFamily fam;
    fam.shape = s;
    fam.r_min = r_min;
    for (int k = r_min; k <= s.q; ++k) {
        ExpPoly member;
        for (int attempt = 0; attempt < 40; ++attempt) {
            ExpPoly seed(s.p, s.q, k);
            for (int t = 0; t < opt.terms_per_member; ++t) {
                ExpTerm term;
                term.coeff = cplx(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
                for (int i = 0; i < s.p - k; ++i)
                    term.a.push_back(uniform_int(rng, -opt.phase_band, opt.phase_band));
                for (int i = 0; i < s.q - k; ++i)
                    term.b.push_back(uniform_int(rng, -opt.phase_band, opt.phase_band));
                bool all_m_even = true;
                for (int i = 0; i < k; ++i) {
                    term.m.push_back(uniform_int(rng, -opt.phase_band, opt.phase_band));
                    if (term.m.back() % 2 != 0) all_m_even = false;
                    term.widths.push_back(uniform(rng, opt.min_width, opt.max_width));
                }
                std::vector<int> d;
                const int min_half = (opt.constrain_even_m_const && all_m_even && k > 0) ? 1 : 0;
                for (int i = 0; i < k; ++i)
                    d.push_back(2 * uniform_int(rng, min_half, opt.max_t_degree / 2));
                term.poly[d] = 1.0;
                seed.add_term(std::move(term));
            }
            member = project_skew_class(s, k, seed);
            if (member.max_coeff() > 1e-6) break;
        }
        fam.members.push_back(std::move(member));
    }
    fam.validate();
    return fam;
}

// ---------- theorem pairings ----------

PairingResult theta_r_pairing(const GroupShape& s, int r, const XiFamily& fam) {
    if (fam.shape.p != s.p || fam.shape.q != s.q)
        throw std::domain_error("theta_r_pairing: family built for another shape");
    if (r < fam.r_min || r > s.q)
        throw std::domain_error("theta_r_pairing: family does not cover k = r..q");
    const int n = s.n();
    PairingResult out;
    for (int k = r; k <= s.q; ++k) {
        ExpPoly G = fam.g(k);
        require_t_odd(G, "theta_r_pairing");
        const double ck = std::pow(2.0, n - 2 * k) * std::pow(PI, n - k) *
                          double(factorial_ll(k)) /
                          (double(factorial_ll(k - r)) * double(factorial_ll(r))) *
                          omega(s, k).value();
        const PairResult pr = delta_coth_pairing(G);
        out.k_contributions.push_back({k, theorem_sign(s, r) * ck * pr.value});
        out.value += ck * pr.value;
        out.error += ck * pr.error;
    }
    out.value *= theorem_sign(s, r);
    return out;
}

PairingResult theta_r_most_continuous(const GroupShape& s, const XiFamily& fam) {
    const int q = s.q;
    ExpPoly G = fam.g(q);
    require_t_odd(G, "theta_r_most_continuous");
    const double pref = parity_sign((long long)s.p * (s.p - 1) / 2 + (long long)q * q) *
                        std::pow(2.0, s.p - q) * std::pow(PI, s.p) * omega(s, q).value();
    const PairResult pr = delta_coth_pairing(G);
    PairingResult out;
    out.value = pref * pr.value;
    out.error = std::abs(pref) * pr.error;
    out.k_contributions.push_back({q, out.value});
    return out;
}

namespace {

// phase constraints + t-weights induced by one matching; bare z-pairs branch
// over their theta sector downstream
struct MatchPlan {
    std::vector<int> req_a, req_b, req_m;  // FREE_PHASE where unconstrained
    std::vector<Weight> weights;
    std::vector<int> bare;  // 0-based gamma of bare z-pairs
};

MatchPlan plan_for_diagram(const Diagram& d, const Signature& sig, int k) {
    const GroupShape& s = sig.shape;
    MatchPlan plan;
    plan.req_a.assign(size_t(s.p - k), FREE_PHASE);
    plan.req_b.assign(size_t(s.q - k), FREE_PHASE);
    plan.req_m.assign(size_t(k), FREE_PHASE);
    plan.weights.assign(size_t(k), Weight::plain());
    for (const Piece& pc : d.pieces) {
        switch (pc.kind) {
            case Piece::Kind::ArcA:
                plan.req_a[size_t(pc.alpha - 1)] = -sig.c[size_t(pc.c_a - 1)];
                break;
            case Piece::Kind::ArcB:
                plan.req_b[size_t(pc.beta - 1)] = -sig.c[size_t(pc.c_b - 1)];
                break;
            case Piece::Kind::Chain: {
                const int ca = sig.c[size_t(pc.c_a - 1)], cb = sig.c[size_t(pc.c_b - 1)];
                plan.req_m[size_t(pc.gamma - 1)] = -(ca + cb);
                plan.weights[size_t(pc.gamma - 1)] = Weight::sgn_exp_decay(std::abs(ca - cb));
                break;
            }
            case Piece::Kind::Cycle: {
                const int ms = sig.m[size_t(pc.s - 1)];
                plan.req_m[size_t(pc.gamma - 1)] = -ms;
                plan.weights[size_t(pc.gamma - 1)] = cycle_kernel_weight(ms);
                break;
            }
            case Piece::Kind::BareZ:
                plan.bare.push_back(pc.gamma - 1);
                break;
        }
    }
    return plan;
}

// evaluates <G, diagram factors> for one matching, branching bare z-pairs
// over theta in {0, pi}; bare sectors carry an explicit factor pi each
PairResult pair_with_plan(const ExpPoly& G, const MatchPlan& plan) {
    PairResult total;
    const size_t nb = plan.bare.size();
    for (unsigned long pat = 0; pat < (1ul << nb); ++pat) {
        ExpPoly H(G.p, G.q, G.k);
        std::vector<Weight> weights = plan.weights;
        for (size_t i = 0; i < nb; ++i)
            weights[size_t(plan.bare[i])] =
                (pat >> i) & 1 ? Weight::tanh_half() : Weight::coth_half();
        for (const auto& term : G.terms) {
            bool ok = true;
            for (size_t i = 0; ok && i < term.a.size(); ++i)
                if (plan.req_a[i] != FREE_PHASE && term.a[i] != plan.req_a[i]) ok = false;
            for (size_t i = 0; ok && i < term.b.size(); ++i)
                if (plan.req_b[i] != FREE_PHASE && term.b[i] != plan.req_b[i]) ok = false;
            for (size_t i = 0; ok && i < term.m.size(); ++i)
                if (plan.req_m[i] != FREE_PHASE && term.m[i] != plan.req_m[i]) ok = false;
            if (!ok) continue;
            ExpTerm t;
            t.coeff = term.coeff;
            for (size_t i = 0; i < nb; ++i)
                if ((pat >> i) & 1) t.coeff *= parity_sign(term.m[size_t(plan.bare[i])]);
            t.a.assign(term.a.size(), 0);
            t.b.assign(term.b.size(), 0);
            t.m.assign(term.m.size(), 0);
            t.poly = term.poly;
            t.widths = term.widths;
            H.add_term(std::move(t));
        }
        H.normalize();
        if (H.terms.empty()) continue;
        const PairResult pr = integrate_t(H, weights);
        const double bare_pi = std::pow(PI, double(nb));
        total.value += bare_pi * pr.value;
        total.error += bare_pi * pr.error;
    }
    return total;
}

}  // namespace

PairingResult theta_Ac_pairing(const Signature& sig, const XiFamily& fam) {
    sig.validate(false);
    const GroupShape& s = sig.shape;
    if (fam.shape.p != s.p || fam.shape.q != s.q)
        throw std::domain_error("theta_Ac_pairing: family built for another shape");
    const int r = sig.r;
    if (r < fam.r_min) throw std::domain_error("theta_Ac_pairing: family does not cover k = r..q");
    const int n = s.n();
    PairingResult out;
    for (int k = r; k <= s.q; ++k) {
        ExpPoly G = fam.g(k);
        require_t_odd(G, "theta_Ac_pairing");
        const double wk = omega(s, k).value();
        const double angle_factor = std::pow(2.0 * PI, n - k - r);
        cplx kterm = 0.0;
        for (const Diagram& d : enumerate_omega_circ(sig, k)) {
            const MatchPlan plan = plan_for_diagram(d, sig, k);
            const PairResult pr = pair_with_plan(G, plan);
            kterm += angle_factor * pr.value;
            out.error += wk * angle_factor * pr.error;
        }
        out.k_contributions.push_back({k, theorem_sign(s, r) * wk * kterm});
        out.value += wk * kterm;
    }
    out.value *= theorem_sign(s, r);
    return out;
}

PairingResult theta_Acm_pairing(const Signature& sig, const XiFamily& fam) {
    sig.validate(false);
    const GroupShape& s = sig.shape;
    if (fam.shape.p != s.p || fam.shape.q != s.q)
        throw std::domain_error("theta_Acm_pairing: family built for another shape");
    const int r = sig.r;
    if (r < fam.r_min)
        throw std::domain_error("theta_Acm_pairing: family does not cover k = r..q");

    Signature work = sig;
    PairingResult out;
    if (!std::is_sorted(work.m.rbegin(), work.m.rend())) {
        std::sort(work.m.rbegin(), work.m.rend());
        out.warned_unsorted_m = true;
    }
    double u_fact = 1.0;
    {
        int run = 1;
        for (int i = 1; i < r; ++i) {
            run = (work.m[size_t(i)] == work.m[size_t(i - 1)]) ? run + 1 : 1;
            u_fact *= run;
        }
    }

    const int n = s.n();
    for (int k = r; k <= s.q; ++k) {
        ExpPoly G = fam.g(k);
        require_t_odd(G, "theta_Acm_pairing");
        const double wk = omega(s, k).value();
        const double angle_factor = std::pow(2.0 * PI, n - k);
        cplx kterm = 0.0;
        for (const Diagram& d : enumerate_omega(work, k)) {
            const MatchPlan plan = plan_for_diagram(d, work, k);
            const PairResult pr = pair_with_plan(G, plan);  // no bare pairs here
            kterm += angle_factor * pr.value;
            out.error += wk / u_fact * angle_factor * pr.error;
        }
        out.k_contributions.push_back({k, theorem_sign(s, r) * wk / u_fact * kterm});
        out.value += wk / u_fact * kterm;
    }
    out.value *= theorem_sign(s, r);
    return out;
}

PairingResult theta_r_from_classes(const GroupShape& s, int r, const XiFamily& fam, int c_band) {
    if (s.p != 1 || s.q != 1)
        throw std::domain_error("theta_r_from_classes: only the rank-one group is supported");
    if (r < fam.r_min || r > 1) throw std::domain_error("theta_r_from_classes: bad rank");

    PairingResult out;
    out.cutoffs.series_cutoff = c_band;
    if (r == 1) {
        // a single discrete class of full rank; no c-sum at all
        const Signature sig(s, 1, {}, {}, {0}, {1.0});
        return theta_Ac_pairing(sig, fam);
    }

    // r = 0: ordered (c1, c2) with A = {1} hits every class once
    for (int c1 = -c_band; c1 <= c_band; ++c1)
        for (int c2 = -c_band; c2 <= c_band; ++c2) {
            const Signature sig(s, 0, {1}, {c1, c2});
            const PairingResult part = theta_Ac_pairing(sig, fam);
            out.value += part.value;
            out.error += part.error;
            for (const auto& [k, v] : part.k_contributions) {
                bool found = false;
                for (auto& [k0, v0] : out.k_contributions)
                    if (k0 == k) v0 += v, found = true;
                if (!found) out.k_contributions.push_back({k, v});
            }
        }

    // exact geometric tails of the k = 1 chain sums: per theta-mode M of G_1
    // the band covered |u| <= 2 c_band - |v| with v = -M, u = v (mod 2)
    ExpPoly G = fam.g(1);
    const double S = theorem_sign(s, 0);
    const double wk = omega(s, 1).value();
    cplx tail_total = 0.0;
    for (const auto& term : G.terms) {
        const int v = -term.m[0];
        if (std::abs(v) > 2 * c_band) continue;  // whole mode missing: not folded
        const int u_next = 2 * c_band - std::abs(v) + 2;
        for (const auto& [d, c] : term.poly) {
            const QuadResult qr =
                integrate_monomial_weight(d[0], term.widths[0], Weight::geom_tail(u_next, 2.0));
            tail_total += term.coeff * c * 2.0 * qr.value;
            out.error += wk * 2.0 * PI * std::abs(term.coeff * c) * 2.0 * qr.error;
        }
    }
    const cplx tail = S * wk * 2.0 * PI * tail_total;
    out.value += tail;
    for (auto& [k0, v0] : out.k_contributions)
        if (k0 == 1) v0 += tail;
    return out;
}

// ---------- lemma checks ----------

LemmaReport lemma31_check(const ExpPoly& f_odd, bool tanh_variant) {
    if (f_odd.k != 1 || f_odd.p != 1 || f_odd.q != 1)
        throw std::domain_error("lemma31_check: expects a 1-D (t) function");
    for (const auto& term : f_odd.terms)
        if (term.m[0] != 0) throw std::domain_error("lemma31_check: no theta modes allowed");
    require_t_odd(f_odd, "lemma31_check");

    LemmaReport rep;
    for (const auto& term : f_odd.terms) {
        const double w = term.widths[0];
        for (const auto& [d, c] : term.poly) {
            cplx val;
            const QuadResult qr = rho_kernel_integral(d[0], w, tanh_variant, &val);
            rep.lhs += term.coeff * c * val;
            rep.quad_error += std::abs(term.coeff * c) * qr.error;
        }
    }
    const Weight kernel = tanh_variant ? Weight::csch(1.0) : Weight::coth(1.0);
    const PairResult pr = integrate_t(f_odd, {kernel});
    rep.rhs = 2.0 * I * pr.value;
    rep.quad_error += 2.0 * pr.error;
    rep.error = std::abs(rep.lhs - rep.rhs);
    return rep;
}

namespace {

// pi int_0^inf [f(t,0) coth(t/2) + f(t,pi) tanh(t/2)] dt for odd-in-t f;
// both integrands are even, so this is half the full-line pairing.
PairResult half_line_delta_side(const ExpPoly& f) {
    const PairResult full = delta_coth_pairing(f);
    return {0.5 * PI * full.value, 0.5 * PI * full.error};
}

double fit_log_slope(const std::vector<std::pair<double, double>>& pts) {
    // least squares on log|y| vs log x; returns the decay exponent (-slope)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& [x, y] : pts) {
        if (y <= 0 || x <= 0) continue;
        const double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 3) return 0.0;
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-30) return 0.0;
    return -(n * sxy - sx * sy) / denom;
}

}  // namespace

LemmaReport lemma32_check(const ExpPoly& f, const std::vector<int>& M_values) {
    if (f.k != 1 || f.p != 1 || f.q != 1)
        throw std::domain_error("lemma32_check: expects a (t, theta) function");
    require_t_odd(f, "lemma32_check");
    if (M_values.empty()) throw std::domain_error("lemma32_check: need at least one cutoff");

    LemmaReport rep;
    const PairResult delta = half_line_delta_side(f);
    rep.rhs = delta.value;
    rep.quad_error += delta.error;

    for (int M : M_values) {
        cplx series = 0.0;
        for (const auto& term : f.terms) {
            const int mode = term.m[0];
            if (std::abs(mode) > M) continue;  // dropped by the cutoff
            const double w = term.widths[0];
            const bool odd_kernel = (mode % 2 != 0);
            for (const auto& [d, c] : term.poly) {
                cplx val;
                const QuadResult qr = rho_kernel_integral(d[0], w, odd_kernel, &val);
                series += term.coeff * c * (-I * PI / 2.0) * val;
                rep.quad_error += std::abs(term.coeff * c) * (PI / 2.0) * qr.error;
            }
        }
        rep.lhs = series;
        rep.error_curve.push_back({M, std::abs(series - rep.rhs)});
    }
    rep.error = rep.error_curve.back().second;
    return rep;
}

LemmaReport lemma33_check(const ExpPoly& f, int N_cut) {
    if (f.k != 1 || f.p != 1 || f.q != 1)
        throw std::domain_error("lemma33_check: expects a (t, theta) function");
    require_t_odd(f, "lemma33_check");

    LemmaReport rep;
    // here the delta side pairs over the full t-line (the double sum closes to
    // the whole kernel), unlike the half-line mode-series version
    const PairResult full = delta_coth_pairing(f);
    rep.rhs = PI * full.value;
    rep.quad_error += PI * full.error;

    // group the (a, b) grid by u = a - b at fixed v = a + b; theta selects
    // v = -mode exactly, the u-sum keeps u = v (mod 2) with |a|,|b| <= N
    // truncation and an exact geometric tail for the remainder
    std::map<int, double> mode_mag;            // |v| -> leading-term magnitude
    std::map<int, std::vector<std::pair<double, double>>> u_curves;  // |v| -> (u, |T|)
    cplx total = 0.0;
    for (const auto& term : f.terms) {
        const int v = -term.m[0];
        if (std::abs(v) > 2 * N_cut) continue;
        const double w = term.widths[0];
        const int parity = std::abs(v) % 2;
        const int u_max = 2 * N_cut - std::abs(v);
        for (const auto& [d, c] : term.poly) {
            cplx contrib = 0.0;
            for (int u = parity; u <= u_max; u += 2) {
                const QuadResult qr =
                    integrate_monomial_weight(d[0], w, Weight::sgn_exp_decay(u));
                const double mult = (u == 0) ? 1.0 : 2.0;
                contrib += mult * qr.value;
                rep.quad_error += 2.0 * PI * std::abs(term.coeff * c) * mult * qr.error;
                const double mag = 2.0 * PI * std::abs(term.coeff * c) * std::abs(qr.value);
                if (u >= 4 && mag > 0) u_curves[std::abs(v)].push_back({double(u), mag});
                if (u == parity) mode_mag[std::abs(v)] += mag;
            }
            const QuadResult tail =
                integrate_monomial_weight(d[0], w, Weight::geom_tail(u_max + 2, 2.0));
            contrib += 2.0 * tail.value;
            rep.quad_error += 2.0 * PI * std::abs(term.coeff * c) * 2.0 * tail.error;
            total += 2.0 * PI * term.coeff * c * contrib;
        }
    }
    rep.lhs = total;
    rep.error = std::abs(rep.lhs - rep.rhs);
    rep.error_curve.push_back({N_cut, rep.error});

    // Laplace-direction fit on the dominant theta-mode only
    int dominant = -1;
    double best = 0.0;
    for (const auto& [av, mag] : mode_mag)
        if (mag > best) best = mag, dominant = av;
    if (dominant >= 0) rep.decay_exponent_u = fit_log_slope(u_curves[dominant]);
    std::vector<std::pair<double, double>> v_pts;
    for (const auto& [av, mag] : mode_mag)
        if (av >= 1 && mag > 0) v_pts.push_back({double(av), mag});
    rep.decay_exponent_v = fit_log_slope(v_pts);
    return rep;
}

LemmaReport lemma34_check(const std::map<int, cplx>& coeffs, int K_cut) {
    LemmaReport rep;
    cplx full = 0.0;
    for (const auto& [mode, c] : coeffs) full += c;
    rep.rhs = 2.0 * PI * full;  // 2 pi f(0)

    for (int K = 0; K <= K_cut; ++K) {
        cplx partial = 0.0;
        for (const auto& [mode, c] : coeffs)
            if (std::abs(mode) <= K) partial += c;
        rep.lhs = 2.0 * PI * partial;
        rep.error_curve.push_back({K, std::abs(rep.lhs - rep.rhs)});
    }
    rep.error = rep.error_curve.back().second;

    std::vector<std::pair<double, double>> pts;
    for (const auto& [mode, c] : coeffs)
        if (mode >= 1 && std::abs(c) > 0) pts.push_back({double(mode), std::abs(c)});
    rep.decay_exponent_u = fit_log_slope(pts);
    return rep;
}

// ---------- sigma-independent summation ----------

YsigmaReport ysigma_check(const GroupShape& s, int r, int k, const ExpPoly& G_in, int chain_cut) {
    if (G_in.p != s.p || G_in.q != s.q || G_in.k != k)
        throw std::domain_error("ysigma_check: arity mismatch");
    require_t_odd(G_in, "ysigma_check");
    ExpPoly G = G_in;
    G.normalize();

    YsigmaReport rep;
    const int n = s.n();

    for (const Diagram& sigma : enumerate_omega_tilde(s, r, k)) {
        // piece kind per z-pair: 0 = chain, 1 = cycle
        std::vector<int> kind(size_t(k), 0);
        int arcs = 0;
        for (const Piece& pc : sigma.pieces) {
            if (pc.kind == Piece::Kind::Cycle) kind[size_t(pc.gamma - 1)] = 1;
            if (pc.kind == Piece::Kind::ArcA || pc.kind == Piece::Kind::ArcB) ++arcs;
        }
        cplx val = 0.0;
        for (const auto& term : G.terms) {
            // the truncation must not depend on sigma, so one uniform band
            bool in_range = true;
            for (size_t i = 0; i < term.a.size(); ++i)
                if (std::abs(term.a[i]) > chain_cut) in_range = false;
            for (size_t i = 0; i < term.b.size(); ++i)
                if (std::abs(term.b[i]) > chain_cut) in_range = false;
            for (int g = 0; g < k; ++g)
                if (std::abs(term.m[size_t(g)]) > chain_cut) in_range = false;
            if (!in_range) continue;
            for (const auto& [d, c] : term.poly) {
                cplx factor = term.coeff * c * std::pow(2.0 * PI, arcs);
                for (int g = 0; g < k && std::abs(factor) > 0; ++g) {
                    const int mode = term.m[size_t(g)];
                    const double w = term.widths[size_t(g)];
                    if (kind[size_t(g)] == 1) {
                        // cycle: free label selected to -mode, then the
                        // density-factor rho-integral of the odd Fourier part
                        cplx rho_val;
                        const QuadResult qr =
                            rho_kernel_integral(d[size_t(g)], w, mode % 2 != 0, &rho_val);
                        factor *= 2.0 * PI * (-I) * rho_val;
                        rep.quad_error += std::abs(factor) * qr.error;
                    } else {
                        // chain: v = -mode selected; u-sum over u = v (mod 2)
                        const int v = -mode;
                        const int parity = std::abs(v) % 2;
                        const int u_max = 2 * chain_cut - std::abs(v);
                        cplx usum = 0.0;
                        for (int u = parity; u <= u_max; u += 2) {
                            const QuadResult qr = integrate_monomial_weight(
                                d[size_t(g)], w, Weight::sgn_exp_decay(u));
                            usum += (u == 0 ? 1.0 : 2.0) * qr.value;
                            rep.quad_error += std::abs(factor) * qr.error;
                        }
                        const QuadResult tail = integrate_monomial_weight(
                            d[size_t(g)], w, Weight::geom_tail(u_max + 2, 2.0));
                        usum += 2.0 * tail.value;
                        rep.quad_error += std::abs(factor) * 2.0 * tail.error;
                        factor *= 2.0 * PI * usum;
                    }
                }
                val += factor;
            }
        }
        rep.per_sigma.push_back(val);
    }

    const double closed_const = std::pow(2.0, n - 2 * k + r) * std::pow(PI, n - k);
    const PairResult closed = delta_coth_pairing(G);
    rep.closed_form = closed_const * closed.value;
    rep.quad_error += closed_const * closed.error;

    for (const cplx& v : rep.per_sigma) rep.scale = std::max(rep.scale, std::abs(v));
    rep.scale = std::max(rep.scale, std::abs(rep.closed_form));
    for (size_t i = 0; i < rep.per_sigma.size(); ++i) {
        rep.max_vs_closed =
            std::max(rep.max_vs_closed, std::abs(rep.per_sigma[i] - rep.closed_form));
        for (size_t j = i + 1; j < rep.per_sigma.size(); ++j)
            rep.max_pairwise =
                std::max(rep.max_pairwise, std::abs(rep.per_sigma[i] - rep.per_sigma[j]));
    }
    return rep;
}

void to_json(nlohmann::json& j, const XiFamily& fam) {
    j = {{"p", fam.shape.p},
         {"q", fam.shape.q},
         {"r_min", fam.r_min},
         {"already_vandermonde", fam.already_vandermonde},
         {"members", fam.members}};
}

void from_json(const nlohmann::json& j, XiFamily& fam) {
    fam.shape = GroupShape(j.at("p").get<int>(), j.at("q").get<int>());
    fam.r_min = j.value("r_min", 0);
    fam.already_vandermonde = j.value("already_vandermonde", false);
    fam.members = j.at("members").get<std::vector<ExpPoly>>();
    if (int(fam.members.size()) != fam.shape.q - fam.r_min + 1)
        throw std::domain_error("XiFamily: expected q - r_min + 1 members");
    for (int k = fam.r_min; k <= fam.shape.q; ++k) {
        const ExpPoly& m = fam.members[size_t(k - fam.r_min)];
        if (m.p != fam.shape.p || m.q != fam.shape.q || m.k != k)
            throw std::domain_error("XiFamily: member arity mismatch");
    }
}

}  // namespace pseudospec
