#pragma once

#include "pseudospec/cartan.hpp"

#include <functional>
#include <json.hpp>

namespace pseudospec {

// Discrete/continuous parameter block attached to a rank-r class:
//   c: n-2r integers split by A (phi-side) and its complement B (psi-side),
//   (m_s, rho_s): r pairs forming d_s = (m_s + i rho_s)/2.
struct Signature {
    GroupShape shape;
    int r = 0;
    std::vector<int> A;        // sorted subset of {1..n-2r}, size p-r (1-based labels)
    std::vector<int> c;        // n-2r integers
    std::vector<int> m;        // r integers
    std::vector<double> rho;   // r positive reals

    Signature() = default;
    Signature(GroupShape s, int r_, std::vector<int> A_, std::vector<int> c_,
              std::vector<int> m_ = {}, std::vector<double> rho_ = {});

    std::vector<int> B() const;                 // complement of A, sorted
    cplx d(int s) const;                        // (m_s + i rho_s)/2, s 1-based
    bool is_A(int cslot) const;                 // membership of a 1-based c-slot

    // strict: c strictly decreasing, rho strictly decreasing and positive.
    // relaxed drops both orderings (arbitrary integer c, positive rho).
    void validate(bool strict = true) const;
};

struct Piece {
    enum class Kind { ArcA, ArcB, Chain, Cycle, BareZ };
    Kind kind = Kind::ArcA;
    int c_a = 0;    // ArcA / Chain: 1-based c-slot on the phi side
    int c_b = 0;    // ArcB / Chain: 1-based c-slot on the psi side
    int alpha = 0;  // ArcA: phi index (1-based)
    int beta = 0;   // ArcB: psi index
    int s = 0;      // Cycle: d-pair index
    int gamma = 0;  // Chain / Cycle / BareZ: z-pair index

    static Piece arc_a(int c, int alpha);
    static Piece arc_b(int c, int beta);
    static Piece chain(int c_left, int gamma, int c_right);
    static Piece cycle(int s, int gamma);
    static Piece bare_z(int gamma);

    friend bool operator==(const Piece&, const Piece&) = default;
};

struct Diagram {
    std::vector<Piece> pieces;
    int sign = +1;
};

// matchings of signature entries to coordinates for fixed A:
// r labeled cycles onto distinct z-pairs, k-r chains A-entry -> z-pair -> B-entry,
// arcs A->phi, B->psi bijectively; count k!/(k-r)! (p-r)! (q-r)!
std::vector<Diagram> enumerate_omega(const Signature& sig, int k);

// merged-alphabet matchings (membership in A not enforced; any c-slot may face
// any angle coordinate, chains take any ordered pair); count k!(n-2r)!/(k-r)!
std::vector<Diagram> enumerate_omega_tilde(const GroupShape& shape, int r, int k);

// A-respecting matchings with r unlabeled bare z-pairs instead of cycles;
// count C(k,r) (p-r)! (q-r)!; sign stored +1
std::vector<Diagram> enumerate_omega_circ(const Signature& sig, int k);

// streaming forms (same order as the vectors above)
void for_each_omega(const Signature& sig, int k, const std::function<void(const Diagram&)>& f);
void for_each_omega_tilde(const GroupShape& shape, int r, int k,
                          const std::function<void(const Diagram&)>& f);
void for_each_omega_circ(const Signature& sig, int k,
                         const std::function<void(const Diagram&)>& f);

// parity of the slot bijection the diagram induces:
//   signature slots ordered c_1..c_{n-2r}, d_1, dbar_1, ..., d_r, dbar_r;
//   coordinate slots ordered phi_1..phi_{p-k}, psi_1..psi_{q-k}, z_1, -zbar_1, ..., z_k, -zbar_k;
//   chains map the A-side entry to z and the B-side entry to -zbar, cycles map d -> z, dbar -> -zbar.
int diagram_sign(const Diagram& d, const Signature& sig, int k);

// all size-`size` subsets of {1..nn}, each sorted, in lexicographic order
std::vector<std::vector<int>> subsets_1based(int nn, int size);

// closed counts used as enumeration cross-checks
long long omega_count(const GroupShape& s, int r, int k);
long long omega_tilde_count(const GroupShape& s, int r, int k);
long long omega_circ_count(const GroupShape& s, int r, int k);

void to_json(nlohmann::json& j, const Piece& p);
void from_json(const nlohmann::json& j, Piece& p);
void to_json(nlohmann::json& j, const Diagram& d);
void from_json(const nlohmann::json& j, Diagram& d);
void to_json(nlohmann::json& j, const Signature& s);
void from_json(const nlohmann::json& j, Signature& s);

} // namespace pseudospec
