#include "pseudospec/cartan.hpp"

#include <algorithm>
#include <cmath>

namespace pseudospec {

CartanPoint::CartanPoint(int k_, std::vector<double> phi_, std::vector<double> psi_,
                         std::vector<double> t_, std::vector<double> theta_)
    : k(k_), phi(std::move(phi_)), psi(std::move(psi_)), t(std::move(t_)), theta(std::move(theta_)) {
    for (double& a : phi) a = reduce_angle(a);
    for (double& a : psi) a = reduce_angle(a);
    for (double& a : theta) a = reduce_angle(a);
}

void CartanPoint::check_shape(const GroupShape& s) const {
    if (k < 0 || k > s.q) throw std::domain_error("CartanPoint: k out of [0,q]");
    if ((int)phi.size() != s.p - k || (int)psi.size() != s.q - k ||
        (int)t.size() != k || (int)theta.size() != k)
        throw std::domain_error("CartanPoint: coordinate list length mismatch");
}

WeylElement WeylElement::identity(const GroupShape& s, int k) {
    WeylElement w;
    w.perm_phi.resize(s.p - k);
    w.perm_psi.resize(s.q - k);
    w.perm_z.resize(k);
    w.refl.assign(k, false);
    for (int i = 0; i < s.p - k; ++i) w.perm_phi[i] = i;
    for (int i = 0; i < s.q - k; ++i) w.perm_psi[i] = i;
    for (int i = 0; i < k; ++i) w.perm_z[i] = i;
    return w;
}

WeylElement WeylElement::inverse() const {
    WeylElement w;
    w.perm_phi.resize(perm_phi.size());
    w.perm_psi.resize(perm_psi.size());
    w.perm_z.resize(perm_z.size());
    w.refl.resize(refl.size());
    for (size_t i = 0; i < perm_phi.size(); ++i) w.perm_phi[perm_phi[i]] = int(i);
    for (size_t i = 0; i < perm_psi.size(); ++i) w.perm_psi[perm_psi[i]] = int(i);
    // (sigma, eps)^{-1} = (sigma^{-1}, eps o sigma):  acting by the inverse first
    // un-permutes pairs, then undoes the reflections in their new slots
    for (size_t i = 0; i < perm_z.size(); ++i) w.perm_z[perm_z[i]] = int(i);
    for (size_t i = 0; i < refl.size(); ++i) w.refl[perm_z[i]] = refl[i];
    return w;
}

WeylElement compose(const WeylElement& w2, const WeylElement& w1) {
    if (w2.perm_phi.size() != w1.perm_phi.size() || w2.perm_psi.size() != w1.perm_psi.size() ||
        w2.perm_z.size() != w1.perm_z.size())
        throw std::domain_error("compose: dimension mismatch");
    WeylElement w;
    w.perm_phi.resize(w1.perm_phi.size());
    w.perm_psi.resize(w1.perm_psi.size());
    w.perm_z.resize(w1.perm_z.size());
    w.refl.resize(w1.refl.size());
    for (size_t i = 0; i < w1.perm_phi.size(); ++i) w.perm_phi[i] = w2.perm_phi[w1.perm_phi[i]];
    for (size_t i = 0; i < w1.perm_psi.size(); ++i) w.perm_psi[i] = w2.perm_psi[w1.perm_psi[i]];
    for (size_t i = 0; i < w1.perm_z.size(); ++i) {
        w.perm_z[i] = w2.perm_z[w1.perm_z[i]];
        // reflections are attached to source slots: apply w1's sign, then w2's
        // sign at the slot where w1 parked the pair
        w.refl[i] = (w1.refl[i] != (bool)w2.refl[w1.perm_z[i]]);
    }
    return w;
}

std::vector<WeylElement> weyl_elements(const GroupShape& s, int k) {
    std::vector<std::vector<int>> perms_phi, perms_psi, perms_z;
    auto all_perms = [](int m) {
        std::vector<std::vector<int>> out;
        std::vector<int> p(m);
        for (int i = 0; i < m; ++i) p[i] = i;
        do out.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
        return out;
    };
    perms_phi = all_perms(s.p - k);
    perms_psi = all_perms(s.q - k);
    perms_z = all_perms(k);

    std::vector<WeylElement> out;
    out.reserve(size_t(weyl_order(s, k)));
    for (const auto& pp : perms_phi)
        for (const auto& pq : perms_psi)
            for (const auto& pz : perms_z)
                for (int mask = 0; mask < (1 << k); ++mask) {
                    WeylElement w;
                    w.perm_phi = pp;
                    w.perm_psi = pq;
                    w.perm_z = pz;
                    w.refl.resize(k);
                    for (int i = 0; i < k; ++i) w.refl[i] = (mask >> i) & 1;
                    out.push_back(std::move(w));
                }
    return out;
}

std::vector<cplx> eigenvalues(const GroupShape& s, const CartanPoint& h) {
    h.check_shape(s);
    std::vector<cplx> ev;
    ev.reserve(s.n());
    for (double a : h.phi) ev.push_back(std::exp(cplx(0.0, a)));
    for (int g = 0; g < h.k; ++g) ev.push_back(std::exp(cplx(h.t[g], h.theta[g])));        // e^{z}
    for (double a : h.psi) ev.push_back(std::exp(cplx(0.0, a)));
    for (int g = 0; g < h.k; ++g) ev.push_back(std::exp(cplx(-h.t[g], h.theta[g])));       // e^{-conj z}
    return ev;
}

cplx vandermonde(const std::vector<cplx>& v) {
    cplx prod = 1.0;
    for (size_t j = 0; j < v.size(); ++j)
        for (size_t l = j + 1; l < v.size(); ++l) prod *= v[j] - v[l];
    return prod;
}

cplx vandermonde_at(const GroupShape& s, const CartanPoint& h) {
    return vandermonde(eigenvalues(s, h));
}

long long weyl_order(const GroupShape& s, int k) {
    if (k < 0 || k > s.q) throw std::domain_error("weyl_order: k out of range");
    return factorial_ll(s.p - k) * factorial_ll(s.q - k) * factorial_ll(k) * (1LL << k);
}

Rational omega(const GroupShape& s, int k) { return Rational(1, weyl_order(s, k)); }

CartanPoint weyl_act(const WeylElement& w, const CartanPoint& h) {
    if (w.perm_phi.size() != h.phi.size() || w.perm_psi.size() != h.psi.size() ||
        w.perm_z.size() != h.t.size() || w.refl.size() != h.t.size())
        throw std::domain_error("weyl_act: dimension mismatch");
    CartanPoint out = h;
    for (size_t i = 0; i < h.phi.size(); ++i) out.phi[w.perm_phi[i]] = h.phi[i];
    for (size_t i = 0; i < h.psi.size(); ++i) out.psi[w.perm_psi[i]] = h.psi[i];
    for (size_t i = 0; i < h.t.size(); ++i) {
        double tv = w.refl[i] ? -h.t[i] : h.t[i];
        out.t[w.perm_z[i]] = tv;
        out.theta[w.perm_z[i]] = h.theta[i];
    }
    return out;
}

CartanPoint random_point(const GroupShape& s, int k, Rng& rng, double margin) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        CartanPoint h;
        h.k = k;
        for (int i = 0; i < s.p - k; ++i) h.phi.push_back(uniform(rng, -PI, PI));
        for (int i = 0; i < s.q - k; ++i) h.psi.push_back(uniform(rng, -PI, PI));
        for (int i = 0; i < k; ++i) {
            h.t.push_back(uniform(rng, -2.0, 2.0));
            h.theta.push_back(uniform(rng, -PI, PI));
        }
        if (margin > 0.0) {
            bool ok = true;
            for (double tv : h.t)
                if (std::abs(tv) < margin) ok = false;
            auto ev = eigenvalues(s, h);
            for (size_t a = 0; a < ev.size() && ok; ++a)
                for (size_t b = a + 1; b < ev.size() && ok; ++b)
                    if (std::abs(ev[a] - ev[b]) < margin) ok = false;
            if (!ok) continue;
        }
        return h;
    }
    throw std::runtime_error("random_point: could not find a regular point");
}

SymmetryReport symmetry_type(const GroupShape& s, int k,
                             const std::function<cplx(const CartanPoint&)>& f,
                             int samples, Rng& rng, double tol) {
    SymmetryReport rep;
    const int np = s.p - k, nq = s.q - k;
    for (int it = 0; it < samples; ++it) {
        CartanPoint h = random_point(s, k, rng, 1e-3);
        const cplx f0 = f(h);
        rep.scale = std::max(rep.scale, std::abs(f0));

        auto probe = [&](const WeylElement& w, int sym_sign, int skew_sign) {
            const cplx fw = f(weyl_act(w, h));
            rep.max_violation_symmetric =
                std::max(rep.max_violation_symmetric, std::abs(fw - double(sym_sign) * f0));
            rep.max_violation_skew =
                std::max(rep.max_violation_skew, std::abs(fw - double(skew_sign) * f0));
        };

        // adjacent transpositions in S_{p-k}: symmetric class invariant, skew class flips
        for (int i = 0; i + 1 < np; ++i) {
            WeylElement w = WeylElement::identity(s, k);
            std::swap(w.perm_phi[i], w.perm_phi[i + 1]);
            probe(w, +1, -1);
        }
        for (int i = 0; i + 1 < nq; ++i) {
            WeylElement w = WeylElement::identity(s, k);
            std::swap(w.perm_psi[i], w.perm_psi[i + 1]);
            probe(w, +1, -1);
        }
        // transpositions of z-pairs: both classes invariant
        for (int i = 0; i + 1 < k; ++i) {
            WeylElement w = WeylElement::identity(s, k);
            std::swap(w.perm_z[i], w.perm_z[i + 1]);
            probe(w, +1, +1);
        }
        // reflections: symmetric class flips, skew class invariant
        for (int i = 0; i < k; ++i) {
            WeylElement w = WeylElement::identity(s, k);
            w.refl[i] = true;
            probe(w, -1, +1);
        }
    }
    const double thresh = tol * std::max(rep.scale, 1e-30);
    rep.epsilon_symmetric = rep.max_violation_symmetric <= thresh;
    rep.epsilon_skew_symmetric = rep.max_violation_skew <= thresh;
    return rep;
}

void to_json(nlohmann::json& j, const CartanPoint& h) {
    j = nlohmann::json{{"k", h.k}, {"phi", h.phi}, {"psi", h.psi}, {"t", h.t}, {"theta", h.theta}};
}

void from_json(const nlohmann::json& j, CartanPoint& h) {
    h.k = j.at("k").get<int>();
    h.phi = j.at("phi").get<std::vector<double>>();
    h.psi = j.at("psi").get<std::vector<double>>();
    h.t = j.at("t").get<std::vector<double>>();
    h.theta = j.at("theta").get<std::vector<double>>();
    for (double& a : h.phi) a = reduce_angle(a);
    for (double& a : h.psi) a = reduce_angle(a);
    for (double& a : h.theta) a = reduce_angle(a);
}

} // namespace pseudospec
