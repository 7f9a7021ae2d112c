#include "pseudospec/characters.hpp"

#include <cmath>
#include <stdexcept>

namespace pseudospec {

namespace {

const cplx I(0.0, 1.0);

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

void check_point(const Signature& sig, int k, const CartanPoint& h) {
    if (h.k != k) throw std::domain_error("character: point lives on the wrong Cartan piece");
    h.check_shape(sig.shape);
}

// product of one diagram's factors at h, chain factors chosen by `xi_chain`,
// cycle factors by `plus_cycle` (true: + combination, false: - combination)
cplx diagram_value(const Diagram& d, const Signature& sig, const CartanPoint& h, bool xi_chain,
                   bool plus_cycle) {
    cplx val = 1.0;
    for (const Piece& pc : d.pieces) {
        switch (pc.kind) {
            case Piece::Kind::ArcA:
                val *= std::exp(I * double(sig.c[pc.c_a - 1]) * h.phi[pc.alpha - 1]);
                break;
            case Piece::Kind::ArcB:
                val *= std::exp(I * double(sig.c[pc.c_b - 1]) * h.psi[pc.beta - 1]);
                break;
            case Piece::Kind::Chain: {
                const double t = h.t[pc.gamma - 1], th = h.theta[pc.gamma - 1];
                if (xi_chain) {
                    val *= xi(sig.c, pc.c_a, pc.c_b, cplx(t, th));
                } else {
                    const double ca = sig.c[pc.c_a - 1], cb = sig.c[pc.c_b - 1];
                    val *= sgn(t) *
                           std::exp(cplx(-std::abs(ca - cb) * std::abs(t), (ca + cb) * th));
                }
                break;
            }
            case Piece::Kind::Cycle: {
                const double t = h.t[pc.gamma - 1], th = h.theta[pc.gamma - 1];
                const double m = sig.m[pc.s - 1], rho = sig.rho[pc.s - 1];
                const cplx osc = std::exp(I * rho * t);
                val *= std::exp(I * m * th) * (plus_cycle ? osc + 1.0 / osc : osc - 1.0 / osc);
                break;
            }
            case Piece::Kind::BareZ:
                throw std::domain_error("character: bare z-pairs have no pointwise factor");
        }
    }
    return val;
}

}  // namespace

int kappa_prefactor(const GroupShape& s, int k) {
    return parity_sign((long long)k * (k - 1) / 2 + (long long)s.p * s.q + (long long)k * s.q);
}

int identity_prefactor(const GroupShape& s, int r) {
    return parity_sign((long long)s.p * s.q + (long long)s.q * r + (long long)r * (r - 1) / 2);
}

cplx xi(const std::vector<int>& c, int j, int l, cplx z) {
    if (j < 1 || l < 1 || j > (int)c.size() || l > (int)c.size())
        throw std::domain_error("xi: index out of range");
    if (j == l) throw std::domain_error("xi: indices must differ");
    const double cj = c[j - 1], cl = c[l - 1];
    const double t = z.real(), th = z.imag();
    return sgn(cj - cl) * std::exp(cplx(-std::abs(cj - cl) * std::abs(t), (cj + cl) * th));
}

cplx kappa_k(const Signature& sig, int k, const CartanPoint& h) {
    sig.validate(false);
    check_point(sig, k, h);
    cplx total = 0.0;
    for_each_omega(sig, k, [&](const Diagram& d) {
        total += double(d.sign) * diagram_value(d, sig, h, /*xi_chain=*/true, /*plus_cycle=*/true);
    });
    return double(kappa_prefactor(sig.shape, k)) * total;
}

cplx kappa_tilde_k(const Signature& sig, int k, const CartanPoint& h, TildeRoute route) {
    sig.validate(false);
    check_point(sig, k, h);
    if (route == TildeRoute::SumOverA) {
        cplx total = 0.0;
        Signature var = sig;
        for (const auto& A : subsets_1based(sig.shape.n() - 2 * sig.r, sig.shape.p - sig.r)) {
            var.A = A;
            total += kappa_k(var, k, h);
        }
        return total;
    }
    cplx total = 0.0;
    for_each_omega_tilde(sig.shape, sig.r, k, [&](const Diagram& d) {
        total += double(d.sign) * diagram_value(d, sig, h, /*xi_chain=*/true, /*plus_cycle=*/true);
    });
    return double(kappa_prefactor(sig.shape, k)) * total;
}

cplx eta_k(const Signature& sig, int k, const CartanPoint& h) {
    sig.validate(false);
    check_point(sig, k, h);
    cplx total = 0.0;
    for_each_omega_tilde(sig.shape, sig.r, k, [&](const Diagram& d) {
        total += diagram_value(d, sig, h, /*xi_chain=*/false, /*plus_cycle=*/false);
    });
    return total;
}

// ---------- chamber expansion ----------

std::vector<PureExpTerm> chamber_terms(const Diagram& d, const Signature& sig, int k,
                                       const std::vector<int>& chamber, ChainMode chain_mode,
                                       CycleMode cycle_mode, bool include_diagram_sign) {
    const GroupShape& s = sig.shape;
    const int n = s.n(), pk = s.p - k, qk = s.q - k;
    if ((int)chamber.size() != k) throw std::domain_error("chamber_terms: chamber needs k signs");
    const int slot_phi0 = 0, slot_z0 = pk, slot_psi0 = pk + k, slot_zb0 = pk + k + qk;

    std::vector<PureExpTerm> acc;
    acc.push_back({include_diagram_sign ? cplx(double(d.sign)) : cplx(1.0),
                   std::vector<cplx>(size_t(n), cplx(0.0))});

    for (const Piece& pc : d.pieces) {
        switch (pc.kind) {
            case Piece::Kind::ArcA:
                for (auto& term : acc) term.nu[slot_phi0 + pc.alpha - 1] = double(sig.c[pc.c_a - 1]);
                break;
            case Piece::Kind::ArcB:
                for (auto& term : acc) term.nu[slot_psi0 + pc.beta - 1] = double(sig.c[pc.c_b - 1]);
                break;
            case Piece::Kind::Chain: {
                const double ca = sig.c[pc.c_a - 1], cb = sig.c[pc.c_b - 1];
                const double lo = std::min(ca, cb), hi = std::max(ca, cb);
                const int eps = chamber[size_t(pc.gamma - 1)];
                const double factor = chain_mode == ChainMode::SgnT ? double(eps) : sgn(ca - cb);
                for (auto& term : acc) {
                    term.coeff *= factor;
                    term.nu[slot_z0 + pc.gamma - 1] = eps > 0 ? lo : hi;
                    term.nu[slot_zb0 + pc.gamma - 1] = eps > 0 ? hi : lo;
                }
                break;
            }
            case Piece::Kind::Cycle: {
                const cplx ds = sig.d(pc.s), dbar = std::conj(ds);
                const double second = cycle_mode == CycleMode::Difference ? -1.0 : 1.0;
                std::vector<PureExpTerm> next;
                next.reserve(acc.size() * 2);
                for (const auto& term : acc) {
                    PureExpTerm a = term;
                    a.nu[slot_z0 + pc.gamma - 1] = ds;
                    a.nu[slot_zb0 + pc.gamma - 1] = dbar;
                    next.push_back(std::move(a));
                    PureExpTerm b = term;
                    b.coeff *= second;
                    b.nu[slot_z0 + pc.gamma - 1] = dbar;
                    b.nu[slot_zb0 + pc.gamma - 1] = ds;
                    next.push_back(std::move(b));
                }
                acc = std::move(next);
                break;
            }
            case Piece::Kind::BareZ:
                throw std::domain_error("chamber_terms: bare z-pairs carry no exponential");
        }
    }
    return acc;
}

std::vector<PureExpTerm> eta_chamber_terms(const Signature& sig, int k,
                                           const std::vector<int>& chamber) {
    sig.validate(false);
    std::vector<PureExpTerm> out;
    for_each_omega_tilde(sig.shape, sig.r, k, [&](const Diagram& d) {
        auto terms = chamber_terms(d, sig, k, chamber, ChainMode::SgnT, CycleMode::Difference,
                                   /*include_diagram_sign=*/false);
        out.insert(out.end(), terms.begin(), terms.end());
    });
    return out;
}

std::vector<int> chamber_of(const CartanPoint& h) {
    std::vector<int> eps;
    eps.reserve(h.t.size());
    for (double tv : h.t) eps.push_back(tv >= 0 ? 1 : -1);
    return eps;
}

cplx eval_pure(const PureExpTerm& term, const GroupShape& s, int k, const CartanPoint& h) {
    const int pk = s.p - k, qk = s.q - k;
    if ((int)term.nu.size() != s.n()) throw std::domain_error("eval_pure: wrong arity");
    if (h.k != k) throw std::domain_error("eval_pure: point lives on the wrong Cartan piece");
    h.check_shape(s);
    cplx expo = 0.0;
    for (int a = 0; a < pk; ++a) expo += I * term.nu[size_t(a)] * h.phi[size_t(a)];
    for (int b = 0; b < qk; ++b) expo += I * term.nu[size_t(pk + k + b)] * h.psi[size_t(b)];
    for (int g = 0; g < k; ++g) {
        const cplx nz = term.nu[size_t(pk + g)], nzb = term.nu[size_t(pk + k + qk + g)];
        expo += (nz - nzb) * h.t[size_t(g)] + I * (nz + nzb) * h.theta[size_t(g)];
    }
    return term.coeff * std::exp(expo);
}

cplx vandermonde_nu(const PureExpTerm& term) {
    cplx prod = 1.0;
    const size_t n = term.nu.size();
    for (size_t j = 0; j < n; ++j)
        for (size_t l = j + 1; l < n; ++l) prod *= term.nu[j] - term.nu[l];
    return prod;
}

cplx apply_vandermonde_eta(const Signature& sig, int k, const CartanPoint& h) {
    check_point(sig, k, h);
    cplx total = 0.0;
    for (const auto& term : eta_chamber_terms(sig, k, chamber_of(h)))
        total += vandermonde_nu(term) * eval_pure(term, sig.shape, k, h);
    return total;
}

cplx parameter_vandermonde(const Signature& sig) {
    sig.validate(false);
    const int r = sig.r, pr = sig.shape.p - r, nc = sig.shape.n() - 2 * r;
    std::vector<cplx> vals;
    vals.reserve(size_t(sig.shape.n()));
    for (int j = 0; j < pr; ++j) vals.push_back(double(sig.c[size_t(j)]));
    for (int s = 1; s <= r; ++s) vals.push_back(sig.d(s));
    for (int j = pr; j < nc; ++j) vals.push_back(double(sig.c[size_t(j)]));
    for (int s = 1; s <= r; ++s) vals.push_back(std::conj(sig.d(s)));
    return vandermonde(vals);
}

IdentityReport check_vandermonde_identity(const Signature& sig, int k, int samples, Rng& rng) {
    sig.validate(false);
    IdentityReport rep;
    rep.samples = samples;
    const cplx scale = double(identity_prefactor(sig.shape, sig.r)) * parameter_vandermonde(sig);
    for (int i = 0; i < samples; ++i) {
        const CartanPoint h = random_point(sig.shape, k, rng, 0.15);
        const cplx lhs = apply_vandermonde_eta(sig, k, h);
        const cplx rhs = scale * kappa_tilde_k(sig, k, h, TildeRoute::Merged);
        const double den = std::max(std::abs(lhs), std::abs(rhs));
        const double rel = den > 1e-300 ? std::abs(lhs - rhs) / den : std::abs(lhs - rhs);
        rep.max_rel_err = std::max(rep.max_rel_err, rel);
        rep.max_abs_lhs = std::max(rep.max_abs_lhs, std::abs(lhs));
    }
    return rep;
}

}  // namespace pseudospec
