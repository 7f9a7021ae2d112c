#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pseudospec/diagrams.hpp"

#include <map>
#include <set>
#include <string>

using namespace pseudospec;

// independent sign oracle: assemble the (signature slot -> coordinate slot) pairs
// with separate bookkeeping and take parity from the inversion count
static int oracle_sign(const Diagram& d, const Signature& sig, int k) {
    const int r = sig.r, nc = sig.shape.n() - 2 * r;
    const int pk = sig.shape.p - k, qk = sig.shape.q - k;
    std::vector<std::pair<int, int>> pairs;  // (signature slot, coordinate slot)
    for (const Piece& p : d.pieces) {
        switch (p.kind) {
            case Piece::Kind::ArcA:
                pairs.push_back({p.c_a - 1, p.alpha - 1});
                break;
            case Piece::Kind::ArcB:
                pairs.push_back({p.c_b - 1, pk + p.beta - 1});
                break;
            case Piece::Kind::Chain:
                pairs.push_back({p.c_a - 1, pk + qk + 2 * (p.gamma - 1)});
                pairs.push_back({p.c_b - 1, pk + qk + 2 * (p.gamma - 1) + 1});
                break;
            case Piece::Kind::Cycle:
                pairs.push_back({nc + 2 * (p.s - 1), pk + qk + 2 * (p.gamma - 1)});
                pairs.push_back({nc + 2 * (p.s - 1) + 1, pk + qk + 2 * (p.gamma - 1) + 1});
                break;
            case Piece::Kind::BareZ:
                return +1;  // no induced bijection
        }
    }
    std::sort(pairs.begin(), pairs.end());
    int inv = 0;
    for (size_t i = 0; i < pairs.size(); ++i)
        for (size_t j = i + 1; j < pairs.size(); ++j)
            if (pairs[i].second > pairs[j].second) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

static std::vector<std::vector<int>> subsets_of_size(int nc, int sz) {
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << nc); ++mask) {
        if (__builtin_popcount(unsigned(mask)) != sz) continue;
        std::vector<int> s;
        for (int i = 0; i < nc; ++i)
            if ((mask >> i) & 1) s.push_back(i + 1);
        out.push_back(s);
    }
    return out;
}

static Signature make_sig(GroupShape shape, int r, std::vector<int> A) {
    const int nc = shape.n() - 2 * r;
    std::vector<int> c(static_cast<size_t>(nc));
    for (int i = 0; i < nc; ++i) c[i] = nc - i;  // strictly decreasing
    std::vector<int> m(size_t(r), 0);
    std::vector<double> rho(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) rho[i] = r - i;
    return Signature(shape, r, std::move(A), std::move(c), std::move(m), std::move(rho));
}

TEST_CASE("forced single-diagram cases") {
    GroupShape u11(1, 1);
    {
        auto d = enumerate_omega(make_sig(u11, 0, {1}), 0);
        REQUIRE(d.size() == 1);
        REQUIRE(d[0].pieces.size() == 2);
        CHECK(d[0].pieces[0] == Piece::arc_a(1, 1));
        CHECK(d[0].pieces[1] == Piece::arc_b(2, 1));
        CHECK(d[0].sign == +1);
    }
    {
        auto d = enumerate_omega(make_sig(u11, 1, {}), 1);
        REQUIRE(d.size() == 1);
        REQUIRE(d[0].pieces.size() == 1);
        CHECK(d[0].pieces[0] == Piece::cycle(1, 1));
        CHECK(d[0].sign == +1);
    }
    {
        auto d = enumerate_omega(make_sig(u11, 0, {1}), 1);
        REQUIRE(d.size() == 1);
        REQUIRE(d[0].pieces.size() == 1);
        CHECK(d[0].pieces[0] == Piece::chain(1, 1, 2));
        CHECK(d[0].sign == +1);
    }
    {
        auto d = enumerate_omega(make_sig(u11, 0, {2}), 0);
        REQUIRE(d.size() == 1);
        CHECK(d[0].sign == -1);  // single transposition
    }
}

TEST_CASE("bare-pair cases") {
    {
        auto d = enumerate_omega_circ(make_sig(GroupShape(1, 1), 1, {}), 1);
        REQUIRE(d.size() == 1);
        CHECK(d[0].pieces[0] == Piece::bare_z(1));
        CHECK(d[0].sign == +1);
    }
    {
        auto d = enumerate_omega_circ(make_sig(GroupShape(2, 2), 1, {1}), 1);
        REQUIRE(d.size() == 1);
        REQUIRE(d[0].pieces.size() == 3);
        CHECK(d[0].pieces[0] == Piece::bare_z(1));
        CHECK(d[0].pieces[1] == Piece::arc_a(1, 1));
        CHECK(d[0].pieces[2] == Piece::arc_b(2, 1));
    }
    {
        auto ds = enumerate_omega_circ(make_sig(GroupShape(2, 2), 1, {1}), 2);
        REQUIRE(ds.size() == 2);
        for (const auto& d : ds) {
            int bare = 0, chains = 0;
            for (const auto& p : d.pieces) {
                if (p.kind == Piece::Kind::BareZ) ++bare;
                if (p.kind == Piece::Kind::Chain) {
                    ++chains;
                    CHECK(p.c_a == 1);
                    CHECK(p.c_b == 2);
                }
            }
            CHECK(bare == 1);
            CHECK(chains == 1);
        }
    }
}

TEST_CASE("enumerated counts match the closed formulas, p+q <= 6") {
    for (int p = 1; p <= 5; ++p)
        for (int q = 1; q <= p && p + q <= 6; ++q) {
            GroupShape s(p, q);
            for (int r = 0; r <= q; ++r)
                for (int k = r; k <= q; ++k) {
                    CHECK((long long)enumerate_omega_tilde(s, r, k).size() ==
                          omega_tilde_count(s, r, k));
                    if (p + q <= 5) {
                        const int nc = s.n() - 2 * r;
                        for (const auto& A : subsets_of_size(nc, p - r)) {
                            Signature sig = make_sig(s, r, A);
                            CHECK((long long)enumerate_omega(sig, k).size() ==
                                  omega_count(s, r, k));
                            CHECK((long long)enumerate_omega_circ(sig, k).size() ==
                                  omega_circ_count(s, r, k));
                        }
                    }
                }
        }
}

TEST_CASE("k < r gives empty enumerations") {
    GroupShape s(2, 2);
    CHECK(enumerate_omega(make_sig(s, 2, {}), 1).empty());
    CHECK(enumerate_omega_tilde(s, 2, 1).empty());
    CHECK(enumerate_omega_circ(make_sig(s, 2, {}), 1).empty());
}

TEST_CASE("piece multiset structure") {
    GroupShape s(3, 2);
    for (int r = 0; r <= 2; ++r)
        for (int k = r; k <= 2; ++k) {
            const int nc = s.n() - 2 * r;
            for (const auto& A : subsets_of_size(nc, s.p - r)) {
                Signature sig = make_sig(s, r, A);
                for (const auto& d : enumerate_omega(sig, k)) {
                    std::map<Piece::Kind, int> cnt;
                    for (const auto& p : d.pieces) ++cnt[p.kind];
                    CHECK(cnt[Piece::Kind::Cycle] == r);
                    CHECK(cnt[Piece::Kind::Chain] == k - r);
                    CHECK(cnt[Piece::Kind::ArcA] == s.p - k);
                    CHECK(cnt[Piece::Kind::ArcB] == s.q - k);
                    // chains join an A-entry on the left to a B-entry on the right
                    for (const auto& p : d.pieces)
                        if (p.kind == Piece::Kind::Chain) {
                            CHECK(sig.is_A(p.c_a));
                            CHECK_FALSE(sig.is_A(p.c_b));
                        }
                }
                for (const auto& d : enumerate_omega_circ(sig, k)) {
                    std::map<Piece::Kind, int> cnt;
                    for (const auto& p : d.pieces) ++cnt[p.kind];
                    CHECK(cnt[Piece::Kind::BareZ] == r);
                    CHECK(cnt[Piece::Kind::Cycle] == 0);
                    CHECK(cnt[Piece::Kind::Chain] == k - r);
                }
            }
        }
}

TEST_CASE("signs agree with the inversion-count oracle, exhaustive p+q <= 5") {
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= p && p + q <= 5; ++q) {
            GroupShape s(p, q);
            for (int r = 0; r <= q; ++r)
                for (int k = r; k <= q; ++k) {
                    const int nc = s.n() - 2 * r;
                    for (const auto& A : subsets_of_size(nc, p - r)) {
                        Signature sig = make_sig(s, r, A);
                        for (const auto& d : enumerate_omega(sig, k))
                            CHECK(d.sign == oracle_sign(d, sig, k));
                    }
                    Signature merged = make_sig(s, r, subsets_of_size(nc, p - r).front());
                    for (const auto& d : enumerate_omega_tilde(s, r, k))
                        CHECK(d.sign == oracle_sign(d, merged, k));
                }
        }
}

// every A-respecting diagram is a merged diagram, and the disjoint union over A
// fills the merged set exactly once, signs included
TEST_CASE("disjoint union over A maps bijectively onto the merged set") {
    for (int p = 1; p <= 3; ++p)
        for (int q = 1; q <= p && p + q <= 5; ++q) {
            GroupShape s(p, q);
            for (int r = 0; r <= q; ++r)
                for (int k = r; k <= q; ++k) {
                    std::multiset<std::string> from_union;
                    const int nc = s.n() - 2 * r;
                    for (const auto& A : subsets_of_size(nc, p - r)) {
                        Signature sig = make_sig(s, r, A);
                        for (const auto& d : enumerate_omega(sig, k)) {
                            nlohmann::json j = d;
                            auto pieces = j.at("pieces");
                            std::vector<std::string> keys;
                            for (const auto& pj : pieces) keys.push_back(pj.dump());
                            std::sort(keys.begin(), keys.end());
                            std::string key;
                            for (const auto& kk : keys) key += kk + "|";
                            key += std::to_string(d.sign);
                            from_union.insert(key);
                        }
                    }
                    std::multiset<std::string> from_merged;
                    for (const auto& d : enumerate_omega_tilde(s, r, k)) {
                        nlohmann::json j = d;
                        std::vector<std::string> keys;
                        for (const auto& pj : j.at("pieces")) keys.push_back(pj.dump());
                        std::sort(keys.begin(), keys.end());
                        std::string key;
                        for (const auto& kk : keys) key += kk + "|";
                        key += std::to_string(d.sign);
                        from_merged.insert(key);
                    }
                    CHECK(from_union == from_merged);
                }
        }
}

TEST_CASE("signature validation") {
    GroupShape s(2, 1);
    Signature good(s, 0, {1, 2}, {3, 2, 1});
    CHECK_NOTHROW(good.validate(true));
    Signature relaxed(s, 0, {1, 3}, {1, 5, 2});
    CHECK_THROWS_AS(relaxed.validate(true), std::domain_error);
    CHECK_NOTHROW(relaxed.validate(false));
    Signature wrongA(s, 0, {1}, {3, 2, 1});
    CHECK_THROWS_AS(wrongA.validate(false), std::domain_error);
    Signature withd(GroupShape(1, 1), 1, {}, {}, {3}, {1.25});
    CHECK(withd.d(1) == cplx(1.5, 0.625));
    CHECK_THROWS_AS(withd.d(2), std::domain_error);
}

TEST_CASE("diagram JSON round trip") {
    Diagram d;
    d.pieces = {Piece::chain(1, 2, 3), Piece::cycle(1, 1), Piece::arc_a(2, 1)};
    d.sign = -1;
    nlohmann::json j = d;
    auto d2 = j.get<Diagram>();
    CHECK(d2.sign == -1);
    REQUIRE(d2.pieces.size() == 3);
    CHECK(d2.pieces[0] == d.pieces[0]);
    CHECK(d2.pieces[1] == d.pieces[1]);
    CHECK(d2.pieces[2] == d.pieces[2]);
}
