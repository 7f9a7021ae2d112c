#include "pseudospec/diagrams.hpp"

#include <algorithm>
#include <functional>

namespace pseudospec {

// ---------- Signature ----------

Signature::Signature(GroupShape s, int r_, std::vector<int> A_, std::vector<int> c_,
                     std::vector<int> m_, std::vector<double> rho_)
    : shape(s), r(r_), A(std::move(A_)), c(std::move(c_)), m(std::move(m_)), rho(std::move(rho_)) {
    std::sort(A.begin(), A.end());
}

std::vector<int> Signature::B() const {
    const int nc = shape.n() - 2 * r;
    std::vector<char> in_a(size_t(nc) + 1, 0);
    for (int a : A)
        if (a >= 1 && a <= nc) in_a[a] = 1;
    std::vector<int> b;
    for (int i = 1; i <= nc; ++i)
        if (!in_a[i]) b.push_back(i);
    return b;
}

cplx Signature::d(int s) const {
    if (s < 1 || s > r) throw std::domain_error("Signature::d: index out of range");
    return 0.5 * cplx(double(m[s - 1]), rho[s - 1]);
}

bool Signature::is_A(int cslot) const { return std::binary_search(A.begin(), A.end(), cslot); }

void Signature::validate(bool strict) const {
    if (r < 0 || r > shape.q) throw std::domain_error("Signature: r out of [0,q]");
    const int nc = shape.n() - 2 * r;
    if ((int)c.size() != nc) throw std::domain_error("Signature: c needs n-2r entries");
    if ((int)m.size() != r) throw std::domain_error("Signature: m needs r entries");
    if ((int)rho.size() != r) throw std::domain_error("Signature: rho needs r entries");
    if ((int)A.size() != shape.p - r) throw std::domain_error("Signature: |A| must be p-r");
    for (size_t i = 0; i < A.size(); ++i) {
        if (A[i] < 1 || A[i] > nc) throw std::domain_error("Signature: A outside {1..n-2r}");
        if (i > 0 && A[i] <= A[i - 1]) throw std::domain_error("Signature: A not strictly sorted");
    }
    for (double x : rho)
        if (!(x > 0.0)) throw std::domain_error("Signature: rho must be positive");
    if (strict) {
        for (int i = 0; i + 1 < nc; ++i)
            if (!(c[i] > c[i + 1])) throw std::domain_error("Signature: c not strictly decreasing");
        for (int i = 0; i + 1 < r; ++i)
            if (!(rho[i] > rho[i + 1]))
                throw std::domain_error("Signature: rho not strictly decreasing");
    }
}

// ---------- pieces ----------

Piece Piece::arc_a(int c, int alpha) {
    Piece p; p.kind = Kind::ArcA; p.c_a = c; p.alpha = alpha; return p;
}
Piece Piece::arc_b(int c, int beta) {
    Piece p; p.kind = Kind::ArcB; p.c_b = c; p.beta = beta; return p;
}
Piece Piece::chain(int c_left, int gamma, int c_right) {
    Piece p; p.kind = Kind::Chain; p.c_a = c_left; p.gamma = gamma; p.c_b = c_right; return p;
}
Piece Piece::cycle(int s, int gamma) {
    Piece p; p.kind = Kind::Cycle; p.s = s; p.gamma = gamma; return p;
}
Piece Piece::bare_z(int gamma) {
    Piece p; p.kind = Kind::BareZ; p.gamma = gamma; return p;
}

// ---------- sign ----------

int diagram_sign(const Diagram& d, const Signature& sig, int k) {
    const GroupShape& s = sig.shape;
    const int n = s.n(), r = sig.r, nc = n - 2 * r;
    const int pk = s.p - k, qk = s.q - k;

    auto sig_slot_c = [&](int j) {  // 1-based c-slot
        if (j < 1 || j > nc) throw std::domain_error("diagram_sign: c-slot out of range");
        return j - 1;
    };
    auto sig_slot_d = [&](int ss, bool bar) {
        if (ss < 1 || ss > r) throw std::domain_error("diagram_sign: d-index out of range");
        return nc + 2 * (ss - 1) + (bar ? 1 : 0);
    };
    auto coord_slot_phi = [&](int a) {
        if (a < 1 || a > pk) throw std::domain_error("diagram_sign: phi index out of range");
        return a - 1;
    };
    auto coord_slot_psi = [&](int b) {
        if (b < 1 || b > qk) throw std::domain_error("diagram_sign: psi index out of range");
        return pk + b - 1;
    };
    auto coord_slot_z = [&](int g, bool bar) {
        if (g < 1 || g > k) throw std::domain_error("diagram_sign: z index out of range");
        return pk + qk + 2 * (g - 1) + (bar ? 1 : 0);
    };

    std::vector<int> perm(size_t(n), -1);
    std::vector<char> covered(size_t(n), 0);
    bool has_bare = false;
    auto put = [&](int from, int to) {
        if (perm[from] != -1 || covered[to])
            throw std::domain_error("diagram_sign: slot covered twice");
        perm[from] = to;
        covered[to] = 1;
    };

    for (const Piece& p : d.pieces) {
        switch (p.kind) {
            case Piece::Kind::ArcA: put(sig_slot_c(p.c_a), coord_slot_phi(p.alpha)); break;
            case Piece::Kind::ArcB: put(sig_slot_c(p.c_b), coord_slot_psi(p.beta)); break;
            case Piece::Kind::Chain:
                put(sig_slot_c(p.c_a), coord_slot_z(p.gamma, false));
                put(sig_slot_c(p.c_b), coord_slot_z(p.gamma, true));
                break;
            case Piece::Kind::Cycle:
                put(sig_slot_d(p.s, false), coord_slot_z(p.gamma, false));
                put(sig_slot_d(p.s, true), coord_slot_z(p.gamma, true));
                break;
            case Piece::Kind::BareZ: {
                has_bare = true;
                int t0 = coord_slot_z(p.gamma, false), t1 = coord_slot_z(p.gamma, true);
                if (covered[t0] || covered[t1])
                    throw std::domain_error("diagram_sign: slot covered twice");
                covered[t0] = covered[t1] = 1;
                break;
            }
        }
    }

    if (has_bare) {
        // bare pairs leave the d-entries unmatched; such diagrams carry no sign
        for (int i = 0; i < n; ++i)
            if (!covered[i]) throw std::domain_error("diagram_sign: uncovered coordinate");
        return +1;
    }
    for (int i = 0; i < n; ++i)
        if (perm[i] == -1 || !covered[i])
            throw std::domain_error("diagram_sign: incomplete matching");
    return permutation_sign(perm);
}

// ---------- enumeration ----------

namespace {

// ordered length-len injections into pool (kept in pool order), lexicographic
void tuples(const std::vector<int>& pool, int len, std::vector<int>& cur,
            std::vector<char>& used, const std::function<void()>& emit) {
    if ((int)cur.size() == len) { emit(); return; }
    for (size_t i = 0; i < pool.size(); ++i) {
        if (used[i]) continue;
        used[i] = 1;
        cur.push_back(pool[i]);
        tuples(pool, len, cur, used, emit);
        cur.pop_back();
        used[i] = 0;
    }
}

void for_each_tuple(const std::vector<int>& pool, int len,
                    const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> cur;
    std::vector<char> used(pool.size(), 0);
    tuples(pool, len, cur, used, [&]() { f(cur); });
}

std::vector<int> remove_all(const std::vector<int>& from, const std::vector<int>& items) {
    std::vector<int> out;
    for (int v : from)
        if (std::find(items.begin(), items.end(), v) == items.end()) out.push_back(v);
    return out;
}

std::vector<int> iota1(int m) {
    std::vector<int> v(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) v[i] = i + 1;
    return v;
}

} // namespace

void for_each_omega(const Signature& sig, int k, const std::function<void(const Diagram&)>& f) {
    sig.validate(false);
    if (k > sig.shape.q) throw std::domain_error("for_each_omega: k > q");
    const int r = sig.r;
    if (k < r) return;
    const GroupShape& s = sig.shape;
    const std::vector<int> A = sig.A, B = sig.B();
    const std::vector<int> gammas = iota1(k);

    for_each_tuple(gammas, r, [&](const std::vector<int>& cyc) {
        const std::vector<int> rem_g = remove_all(gammas, cyc);
        for_each_tuple(A, k - r, [&](const std::vector<int>& chA) {
            for_each_tuple(B, k - r, [&](const std::vector<int>& chB) {
                const std::vector<int> remA = remove_all(A, chA);
                const std::vector<int> remB = remove_all(B, chB);
                for_each_tuple(iota1(s.p - k), s.p - k, [&](const std::vector<int>& arcA) {
                    for_each_tuple(iota1(s.q - k), s.q - k, [&](const std::vector<int>& arcB) {
                        Diagram d;
                        for (int i = 0; i < r; ++i)
                            d.pieces.push_back(Piece::cycle(i + 1, cyc[i]));
                        for (int i = 0; i < k - r; ++i)
                            d.pieces.push_back(Piece::chain(chA[i], rem_g[i], chB[i]));
                        for (size_t i = 0; i < remA.size(); ++i)
                            d.pieces.push_back(Piece::arc_a(remA[i], arcA[i]));
                        for (size_t i = 0; i < remB.size(); ++i)
                            d.pieces.push_back(Piece::arc_b(remB[i], arcB[i]));
                        d.sign = diagram_sign(d, sig, k);
                        f(d);
                    });
                });
            });
        });
    });
}

void for_each_omega_tilde(const GroupShape& shape, int r, int k,
                          const std::function<void(const Diagram&)>& f) {
    if (r < 0 || r > shape.q || k > shape.q)
        throw std::domain_error("for_each_omega_tilde: bad r or k");
    if (k < r) return;
    const int nc = shape.n() - 2 * r, pk = shape.p - k, qk = shape.q - k;
    const std::vector<int> cslots = iota1(nc);
    const std::vector<int> gammas = iota1(k);
    // a merged-alphabet signature (A immaterial for the sign computation)
    Signature merged(shape, r, iota1(shape.p - r), std::vector<int>(size_t(nc), 0),
                     std::vector<int>(size_t(r), 0), std::vector<double>(size_t(r), 1.0));
    for (int i = 0; i < r; ++i) merged.rho[i] = r - i;  // keep validate(false) happy

    for_each_tuple(gammas, r, [&](const std::vector<int>& cyc) {
        const std::vector<int> rem_g = remove_all(gammas, cyc);
        // chains take ordered pairs of distinct c-slots: one tuple of length 2(k-r)
        for_each_tuple(cslots, 2 * (k - r), [&](const std::vector<int>& ch) {
            const std::vector<int> rem_c = remove_all(cslots, ch);
            // arcs: bijection remaining c-slots -> merged angle list (phi's then psi's)
            for_each_tuple(iota1(pk + qk), pk + qk, [&](const std::vector<int>& arcs) {
                Diagram d;
                for (int i = 0; i < r; ++i) d.pieces.push_back(Piece::cycle(i + 1, cyc[i]));
                for (int i = 0; i < k - r; ++i)
                    d.pieces.push_back(Piece::chain(ch[2 * i], rem_g[i], ch[2 * i + 1]));
                for (size_t i = 0; i < rem_c.size(); ++i) {
                    if (arcs[i] <= pk)
                        d.pieces.push_back(Piece::arc_a(rem_c[i], arcs[i]));
                    else
                        d.pieces.push_back(Piece::arc_b(rem_c[i], arcs[i] - pk));
                }
                d.sign = diagram_sign(d, merged, k);
                f(d);
            });
        });
    });
}

void for_each_omega_circ(const Signature& sig, int k,
                         const std::function<void(const Diagram&)>& f) {
    sig.validate(false);
    if (k > sig.shape.q) throw std::domain_error("for_each_omega_circ: k > q");
    const int r = sig.r;
    if (k < r) return;
    const GroupShape& s = sig.shape;
    const std::vector<int> A = sig.A, B = sig.B();
    const std::vector<int> gammas = iota1(k);

    // bare z-pairs are an unordered subset: keep only increasing tuples
    for_each_tuple(gammas, r, [&](const std::vector<int>& bare) {
        if (!std::is_sorted(bare.begin(), bare.end())) return;
        const std::vector<int> rem_g = remove_all(gammas, bare);
        for_each_tuple(A, k - r, [&](const std::vector<int>& chA) {
            for_each_tuple(B, k - r, [&](const std::vector<int>& chB) {
                const std::vector<int> remA = remove_all(A, chA);
                const std::vector<int> remB = remove_all(B, chB);
                for_each_tuple(iota1(s.p - k), s.p - k, [&](const std::vector<int>& arcA) {
                    for_each_tuple(iota1(s.q - k), s.q - k, [&](const std::vector<int>& arcB) {
                        Diagram d;
                        for (int g : bare) d.pieces.push_back(Piece::bare_z(g));
                        for (int i = 0; i < k - r; ++i)
                            d.pieces.push_back(Piece::chain(chA[i], rem_g[i], chB[i]));
                        for (size_t i = 0; i < remA.size(); ++i)
                            d.pieces.push_back(Piece::arc_a(remA[i], arcA[i]));
                        for (size_t i = 0; i < remB.size(); ++i)
                            d.pieces.push_back(Piece::arc_b(remB[i], arcB[i]));
                        d.sign = +1;
                        f(d);
                    });
                });
            });
        });
    });
}

std::vector<Diagram> enumerate_omega(const Signature& sig, int k) {
    std::vector<Diagram> out;
    for_each_omega(sig, k, [&](const Diagram& d) { out.push_back(d); });
    return out;
}

std::vector<Diagram> enumerate_omega_tilde(const GroupShape& shape, int r, int k) {
    std::vector<Diagram> out;
    for_each_omega_tilde(shape, r, k, [&](const Diagram& d) { out.push_back(d); });
    return out;
}

std::vector<Diagram> enumerate_omega_circ(const Signature& sig, int k) {
    std::vector<Diagram> out;
    for_each_omega_circ(sig, k, [&](const Diagram& d) { out.push_back(d); });
    return out;
}

std::vector<std::vector<int>> subsets_1based(int nn, int size) {
    std::vector<std::vector<int>> out;
    if (size < 0 || size > nn) return out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int next) {
        if ((int)cur.size() == size) {
            out.push_back(cur);
            return;
        }
        for (int v = next; v <= nn; ++v) {
            if (nn - v + 1 < size - (int)cur.size()) break;
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

// ---------- closed counts ----------

long long omega_count(const GroupShape& s, int r, int k) {
    if (k < r) return 0;
    return factorial_ll(k) / factorial_ll(k - r) * factorial_ll(s.p - r) * factorial_ll(s.q - r);
}

long long omega_tilde_count(const GroupShape& s, int r, int k) {
    if (k < r) return 0;
    return factorial_ll(k) / factorial_ll(k - r) * factorial_ll(s.n() - 2 * r);
}

long long omega_circ_count(const GroupShape& s, int r, int k) {
    if (k < r) return 0;
    return binomial_ll(k, r) * factorial_ll(s.p - r) * factorial_ll(s.q - r);
}

// ---------- JSON ----------

void to_json(nlohmann::json& j, const Piece& p) {
    switch (p.kind) {
        case Piece::Kind::ArcA: j = {{"type", "ArcA"}, {"c", p.c_a}, {"phi", p.alpha}}; break;
        case Piece::Kind::ArcB: j = {{"type", "ArcB"}, {"c", p.c_b}, {"psi", p.beta}}; break;
        case Piece::Kind::Chain:
            j = {{"type", "Chain"}, {"left", p.c_a}, {"z", p.gamma}, {"right", p.c_b}};
            break;
        case Piece::Kind::Cycle: j = {{"type", "Cycle"}, {"s", p.s}, {"z", p.gamma}}; break;
        case Piece::Kind::BareZ: j = {{"type", "BareZ"}, {"z", p.gamma}}; break;
    }
}

void from_json(const nlohmann::json& j, Piece& p) {
    const std::string t = j.at("type").get<std::string>();
    if (t == "ArcA") p = Piece::arc_a(j.at("c").get<int>(), j.at("phi").get<int>());
    else if (t == "ArcB") p = Piece::arc_b(j.at("c").get<int>(), j.at("psi").get<int>());
    else if (t == "Chain")
        p = Piece::chain(j.at("left").get<int>(), j.at("z").get<int>(), j.at("right").get<int>());
    else if (t == "Cycle") p = Piece::cycle(j.at("s").get<int>(), j.at("z").get<int>());
    else if (t == "BareZ") p = Piece::bare_z(j.at("z").get<int>());
    else throw std::domain_error("Piece: unknown type " + t);
}

void to_json(nlohmann::json& j, const Diagram& d) {
    j = {{"pieces", d.pieces}, {"sign", d.sign}};
}

void from_json(const nlohmann::json& j, Diagram& d) {
    d.pieces = j.at("pieces").get<std::vector<Piece>>();
    d.sign = j.at("sign").get<int>();
}

void to_json(nlohmann::json& j, const Signature& s) {
    j = {{"p", s.shape.p}, {"q", s.shape.q}, {"r", s.r},
         {"A", s.A}, {"c", s.c}, {"m", s.m}, {"rho", s.rho}};
}

void from_json(const nlohmann::json& j, Signature& s) {
    s.shape = GroupShape(j.at("p").get<int>(), j.at("q").get<int>());
    s.r = j.at("r").get<int>();
    s.A = j.at("A").get<std::vector<int>>();
    s.c = j.at("c").get<std::vector<int>>();
    s.m = j.value("m", std::vector<int>{});
    s.rho = j.value("rho", std::vector<double>{});
    std::sort(s.A.begin(), s.A.end());
}

} // namespace pseudospec
