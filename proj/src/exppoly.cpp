#include "pseudospec/exppoly.hpp"

#include <algorithm>
#include <sstream>

namespace pseudospec {

// ---------- polynomial helpers ----------

TPoly poly_const(int k, cplx c) {
    TPoly p;
    p[std::vector<int>(static_cast<size_t>(k), 0)] = c;
    return p;
}

TPoly poly_add(const TPoly& a, const TPoly& b) {
    TPoly out = a;
    for (const auto& [e, c] : b) out[e] += c;
    return out;
}

TPoly poly_mul(const TPoly& a, const TPoly& b) {
    TPoly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<int> e = ea;
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            out[e] += ca * cb;
        }
    return out;
}

TPoly poly_scale(const TPoly& a, cplx c) {
    TPoly out;
    for (const auto& [e, ca] : a) out[e] = ca * c;
    return out;
}

TPoly poly_diff(const TPoly& a, int var) {
    TPoly out;
    for (const auto& [e, c] : a) {
        if (e[size_t(var)] == 0) continue;
        std::vector<int> e2 = e;
        e2[size_t(var)] -= 1;
        out[e2] += c * double(e[size_t(var)]);
    }
    return out;
}

TPoly poly_shift(const TPoly& a, int var) {
    TPoly out;
    for (const auto& [e, c] : a) {
        std::vector<int> e2 = e;
        e2[size_t(var)] += 1;
        out[e2] += c;
    }
    return out;
}

TPoly poly_conj(const TPoly& a) {
    TPoly out;
    for (const auto& [e, c] : a) out[e] = std::conj(c);
    return out;
}

cplx poly_eval(const TPoly& a, const std::vector<double>& t) {
    cplx acc = 0.0;
    for (const auto& [e, c] : a) {
        double mon = 1.0;
        for (size_t i = 0; i < e.size(); ++i)
            for (int d = 0; d < e[i]; ++d) mon *= t[i];
        acc += c * mon;
    }
    return acc;
}

// ---------- ExpPoly basics ----------

void ExpPoly::check_term(const ExpTerm& t) const {
    if ((int)t.a.size() != p - k || (int)t.b.size() != q - k || (int)t.m.size() != k ||
        (int)t.widths.size() != k)
        throw std::domain_error("ExpPoly: term shape does not match context");
    for (double w : t.widths)
        if (!(w > 0.0)) throw std::domain_error("ExpPoly: Gaussian widths must be positive");
    for (const auto& [e, c] : t.poly) {
        (void)c;
        if ((int)e.size() != k) throw std::domain_error("ExpPoly: poly exponent arity mismatch");
        for (int d : e)
            if (d < 0) throw std::domain_error("ExpPoly: negative exponent");
    }
}

ExpPoly& ExpPoly::add_term(ExpTerm t) {
    check_term(t);
    terms.push_back(std::move(t));
    return *this;
}

void ExpPoly::normalize(double drop_tol) {
    // merge by (a, b, m, widths); widths compare bit-exactly, which suffices
    // because equal keys only ever arise from identical constructions
    std::map<std::string, ExpTerm> merged;
    for (const ExpTerm& t : terms) {
        std::ostringstream key;
        for (int v : t.a) key << v << ',';
        key << ';';
        for (int v : t.b) key << v << ',';
        key << ';';
        for (int v : t.m) key << v << ',';
        key << ';';
        key.precision(17);
        for (double w : t.widths) key << w << ',';
        auto it = merged.find(key.str());
        if (it == merged.end()) {
            ExpTerm copy = t;
            copy.poly = poly_scale(t.poly, t.coeff);
            copy.coeff = 1.0;
            merged.emplace(key.str(), std::move(copy));
        } else {
            it->second.poly = poly_add(it->second.poly, poly_scale(t.poly, t.coeff));
        }
    }
    terms.clear();
    double scale = 0.0;
    for (auto& [key, t] : merged)
        for (const auto& [e, c] : t.poly) {
            (void)e, (void)key;
            scale = std::max(scale, std::abs(c));
        }
    const double cut = drop_tol * scale;
    for (auto& [key, t] : merged) {
        (void)key;
        TPoly kept;
        for (const auto& [e, c] : t.poly)
            if (std::abs(c) > cut) kept[e] = c;
        if (kept.empty()) continue;
        t.poly = std::move(kept);
        terms.push_back(std::move(t));
    }
}

bool ExpPoly::is_zero(double tol) const {
    for (const ExpTerm& t : terms)
        for (const auto& [e, c] : t.poly) {
            (void)e;
            if (std::abs(t.coeff * c) > tol) return false;
        }
    return true;
}

double ExpPoly::max_coeff() const {
    double s = 0.0;
    for (const ExpTerm& t : terms)
        for (const auto& [e, c] : t.poly) {
            (void)e;
            s = std::max(s, std::abs(t.coeff * c));
        }
    return s;
}

ExpPoly ExpPoly::conj() const {
    ExpPoly out(p, q, k);
    for (const ExpTerm& t : terms) {
        ExpTerm ct = t;
        ct.coeff = std::conj(t.coeff);
        for (int& v : ct.a) v = -v;
        for (int& v : ct.b) v = -v;
        for (int& v : ct.m) v = -v;
        ct.poly = poly_conj(t.poly);
        out.terms.push_back(std::move(ct));
    }
    return out;
}

ExpPoly operator+(const ExpPoly& f, const ExpPoly& g) {
    if (!f.compatible(g)) throw std::domain_error("ExpPoly +: context mismatch");
    ExpPoly out = f;
    out.terms.insert(out.terms.end(), g.terms.begin(), g.terms.end());
    out.normalize();
    return out;
}

ExpPoly operator-(const ExpPoly& f, const ExpPoly& g) { return f + (cplx(-1.0) * g); }

ExpPoly operator*(const ExpPoly& f, const ExpPoly& g) {
    if (!f.compatible(g)) throw std::domain_error("ExpPoly *: context mismatch");
    ExpPoly out(f.p, f.q, f.k);
    for (const ExpTerm& tf : f.terms)
        for (const ExpTerm& tg : g.terms) {
            ExpTerm t;
            t.coeff = tf.coeff * tg.coeff;
            t.a = tf.a;
            t.b = tf.b;
            t.m = tf.m;
            for (size_t i = 0; i < t.a.size(); ++i) t.a[i] += tg.a[i];
            for (size_t i = 0; i < t.b.size(); ++i) t.b[i] += tg.b[i];
            for (size_t i = 0; i < t.m.size(); ++i) t.m[i] += tg.m[i];
            t.poly = poly_mul(tf.poly, tg.poly);
            t.widths = tf.widths;
            for (size_t i = 0; i < t.widths.size(); ++i) t.widths[i] += tg.widths[i];
            out.terms.push_back(std::move(t));
        }
    out.normalize();
    return out;
}

ExpPoly operator*(cplx c, const ExpPoly& f) {
    ExpPoly out = f;
    for (ExpTerm& t : out.terms) t.coeff *= c;
    return out;
}

// ---------- X_j ----------

namespace {

// t-part derivative of poly * e^{-w t^2}: poly' - 2 w t poly (within one term)
TPoly gaussian_diff(const TPoly& poly, const std::vector<double>& widths, int var) {
    TPoly dp = poly_diff(poly, var);
    TPoly shift = poly_scale(poly_shift(poly, var), -2.0 * widths[size_t(var)]);
    return poly_add(dp, shift);
}

} // namespace

ExpPoly apply_X(int j, const ExpPoly& f) {
    const int pk = f.p - f.k, qk = f.q - f.k;
    if (j < 1 || j > f.n()) throw std::domain_error("apply_X: index out of range");
    ExpPoly out(f.p, f.q, f.k);
    for (const ExpTerm& t : f.terms) {
        if (j <= pk) {
            if (t.a[size_t(j - 1)] == 0) continue;
            ExpTerm nt = t;
            nt.coeff *= double(t.a[size_t(j - 1)]);
            out.terms.push_back(std::move(nt));
        } else if (j <= pk + f.k) {
            const int g = j - pk - 1;  // 0-based z-pair
            ExpTerm nt = t;
            TPoly dpart = poly_scale(gaussian_diff(t.poly, t.widths, g), 0.5);
            TPoly mpart = poly_scale(t.poly, 0.5 * double(t.m[size_t(g)]));
            nt.poly = poly_add(dpart, mpart);
            out.terms.push_back(std::move(nt));
        } else if (j <= pk + f.k + qk) {
            const int b = j - pk - f.k - 1;
            if (t.b[size_t(b)] == 0) continue;
            ExpTerm nt = t;
            nt.coeff *= double(t.b[size_t(b)]);
            out.terms.push_back(std::move(nt));
        } else {
            const int g = j - pk - f.k - qk - 1;
            ExpTerm nt = t;
            TPoly dpart = poly_scale(gaussian_diff(t.poly, t.widths, g), -0.5);
            TPoly mpart = poly_scale(t.poly, 0.5 * double(t.m[size_t(g)]));
            nt.poly = poly_add(dpart, mpart);
            out.terms.push_back(std::move(nt));
        }
    }
    out.normalize();
    return out;
}

ExpPoly apply_vandermonde_op(const GroupShape& shape, int k, const ExpPoly& f) {
    if (shape.p != f.p || shape.q != f.q || k != f.k)
        throw std::domain_error("apply_vandermonde_op: context mismatch");
    ExpPoly acc = f;
    const int n = shape.n();
    for (int j = 1; j <= n; ++j)
        for (int l = j + 1; l <= n; ++l) acc = apply_X(j, acc) - apply_X(l, acc);
    return acc;
}

// ---------- DiffOp ----------

DiffOp DiffOp::one(int n) {
    DiffOp d;
    d.n = n;
    d.monomials[std::vector<int>(static_cast<size_t>(n), 0)] = 1.0;
    return d;
}

DiffOp DiffOp::symbol(int n, int j) {
    if (j < 1 || j > n) throw std::domain_error("DiffOp::symbol: index out of range");
    DiffOp d;
    d.n = n;
    std::vector<int> e(static_cast<size_t>(n), 0);
    e[size_t(j - 1)] = 1;
    d.monomials[e] = 1.0;
    return d;
}

DiffOp operator+(const DiffOp& a, const DiffOp& b) {
    if (a.n != b.n) throw std::domain_error("DiffOp +: arity mismatch");
    DiffOp out = a;
    for (const auto& [e, c] : b.monomials) out.monomials[e] += c;
    return out;
}

DiffOp operator-(const DiffOp& a, const DiffOp& b) {
    DiffOp neg = b;
    for (auto& [e, c] : neg.monomials) {
        (void)e;
        c = -c;
    }
    return a + neg;
}

DiffOp operator*(const DiffOp& a, const DiffOp& b) {
    if (a.n != b.n) throw std::domain_error("DiffOp *: arity mismatch");
    DiffOp out;
    out.n = a.n;
    for (const auto& [ea, ca] : a.monomials)
        for (const auto& [eb, cb] : b.monomials) {
            std::vector<int> e = ea;
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            out.monomials[e] += ca * cb;
        }
    return out;
}

DiffOp DiffOp::vandermonde(int n) {
    DiffOp acc = DiffOp::one(n);
    for (int j = 1; j <= n; ++j)
        for (int l = j + 1; l <= n; ++l) acc = acc * (DiffOp::symbol(n, j) - DiffOp::symbol(n, l));
    return acc;
}

ExpPoly apply(const DiffOp& op, const ExpPoly& f) {
    if (op.n != f.n()) throw std::domain_error("apply: operator arity != n");
    ExpPoly out(f.p, f.q, f.k);
    for (const auto& [e, c] : op.monomials) {
        ExpPoly g = f;
        for (int j = 1; j <= op.n; ++j)
            for (int rep = 0; rep < e[size_t(j - 1)]; ++rep) g = apply_X(j, g);
        out = out + c * g;
    }
    out.normalize();
    return out;
}

// ---------- evaluation and pairing ----------

cplx eval(const ExpPoly& f, const CartanPoint& h) {
    if (h.k != f.k || (int)h.phi.size() != f.p - f.k || (int)h.psi.size() != f.q - f.k)
        throw std::domain_error("eval: point does not match context");
    cplx acc = 0.0;
    for (const ExpTerm& t : f.terms) {
        double phase = 0.0;
        for (size_t i = 0; i < t.a.size(); ++i) phase += t.a[i] * h.phi[i];
        for (size_t i = 0; i < t.b.size(); ++i) phase += t.b[i] * h.psi[i];
        for (size_t i = 0; i < t.m.size(); ++i) phase += t.m[i] * h.theta[i];
        double gauss = 0.0;
        for (size_t i = 0; i < t.widths.size(); ++i) gauss -= t.widths[i] * h.t[i] * h.t[i];
        acc += t.coeff * std::exp(cplx(gauss, phase)) * poly_eval(t.poly, h.t);
    }
    return acc;
}

PairResult integrate_t(const ExpPoly& f, const std::vector<Weight>& weights, bool require_odd,
                       double odd_tol) {
    if ((int)weights.size() != f.k) throw std::domain_error("integrate_t: one weight per t");
    ExpPoly g = f;
    g.normalize();
    const double scale = g.max_coeff();
    for (const ExpTerm& t : g.terms)
        for (size_t i = 0; i < t.a.size(); ++i)
            if (t.a[i] != 0) throw std::domain_error("integrate_t: phi phase left over");
    for (const ExpTerm& t : g.terms)
        for (size_t i = 0; i < t.b.size(); ++i)
            if (t.b[i] != 0) throw std::domain_error("integrate_t: psi phase left over");
    for (const ExpTerm& t : g.terms)
        for (size_t i = 0; i < t.m.size(); ++i)
            if (t.m[i] != 0) throw std::domain_error("integrate_t: theta phase left over");

    if (require_odd) {
        for (int gvar = 0; gvar < f.k; ++gvar) {
            if (weights[size_t(gvar)].kind != Weight::Coth) continue;
            for (const ExpTerm& t : g.terms)
                for (const auto& [e, c] : t.poly)
                    if (e[size_t(gvar)] % 2 == 0 && std::abs(t.coeff * c) > odd_tol * scale)
                        throw std::domain_error(
                            "integrate_t: integrand not odd in a principal-value variable");
        }
    }

    PairResult out;
    for (const ExpTerm& t : g.terms)
        for (const auto& [e, c] : t.poly) {
            cplx v = t.coeff * c;
            double mag = std::abs(v), errband = 0.0;
            double prod_lo = 1.0, prod_hi = 1.0;
            cplx prod = v;
            for (int gvar = 0; gvar < f.k; ++gvar) {
                QuadResult r = integrate_monomial_weight(e[size_t(gvar)], t.widths[size_t(gvar)],
                                                         weights[size_t(gvar)]);
                prod *= r.value;
                prod_lo *= std::abs(r.value);
                prod_hi *= std::abs(r.value) + r.error;
            }
            errband = mag * (prod_hi - prod_lo);
            out.value += prod;
            out.error += errband;
        }
    return out;
}

// ---------- JSON ----------

void to_json(nlohmann::json& j, const ExpPoly& f) {
    nlohmann::json terms = nlohmann::json::array();
    for (const ExpTerm& t : f.terms) {
        nlohmann::json poly = nlohmann::json::object();
        for (const auto& [e, c] : t.poly) {
            std::string key;
            for (size_t i = 0; i < e.size(); ++i) {
                if (i) key += ',';
                key += std::to_string(e[i]);
            }
            poly[key] = {c.real(), c.imag()};
        }
        terms.push_back({{"coeff", {t.coeff.real(), t.coeff.imag()}},
                         {"a", t.a},
                         {"b", t.b},
                         {"m", t.m},
                         {"poly", poly},
                         {"widths", t.widths}});
    }
    j = {{"p", f.p}, {"q", f.q}, {"k", f.k}, {"terms", terms}};
}

void from_json(const nlohmann::json& j, ExpPoly& f) {
    f = ExpPoly(j.at("p").get<int>(), j.at("q").get<int>(), j.at("k").get<int>());
    for (const auto& tj : j.at("terms")) {
        ExpTerm t;
        auto cc = tj.at("coeff");
        t.coeff = cplx(cc.at(0).get<double>(), cc.at(1).get<double>());
        t.a = tj.at("a").get<std::vector<int>>();
        t.b = tj.at("b").get<std::vector<int>>();
        t.m = tj.at("m").get<std::vector<int>>();
        t.widths = tj.at("widths").get<std::vector<double>>();
        for (const auto& [key, cj] : tj.at("poly").items()) {
            std::vector<int> e;
            if (!key.empty()) {
                std::stringstream ss(key);
                std::string part;
                while (std::getline(ss, part, ',')) e.push_back(std::stoi(part));
            }
            t.poly[e] = cplx(cj.at(0).get<double>(), cj.at(1).get<double>());
        }
        if (t.poly.empty()) t.poly = poly_const(f.k);
        f.add_term(std::move(t));
    }
}

} // namespace pseudospec
