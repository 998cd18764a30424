#pragma once

// Shared example graphs for the test suite: small negative-definite plumbing
// trees whose invariants are either known in closed form or pinned by the
// independent chain-level oracle.

#include "pswf/plumbing.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fixtures {

inline pswf::PlumbingGraph single(long long f) { return pswf::make_plumbing({{0, f}}, {}); }

inline pswf::PlumbingGraph chain(const std::vector<long long>& fr) {
    std::vector<std::pair<int, long long>> vs;
    std::vector<std::pair<int, int>> es;
    for (std::size_t i = 0; i < fr.size(); ++i) {
        vs.push_back({static_cast<int>(i), fr[i]});
        if (i) es.push_back({static_cast<int>(i) - 1, static_cast<int>(i)});
    }
    return pswf::make_plumbing(vs, es);
}

// The E8 tree: eight -2 spheres, boundary the Poincare sphere Sigma(2,3,5).
inline pswf::PlumbingGraph e8() {
    std::vector<std::pair<int, long long>> vs;
    for (int i = 0; i < 8; ++i) vs.push_back({i, -2});
    return pswf::make_plumbing(vs, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}});
}

inline pswf::PlumbingGraph sigma(long long a, long long b, long long c) {
    return pswf::from_brieskorn({a, b, c});
}

// Star with central -2 and two (2,1) legs; |det| = 4, two self-conjugate
// classes among four.
inline pswf::PlumbingGraph seifert22() { return pswf::from_seifert(-2, {{2, 1}, {2, 1}}); }

// Central -2 with three -2 legs; det 4.
inline pswf::PlumbingGraph d4() {
    return pswf::make_plumbing({{0, -2}, {1, -2}, {2, -2}, {3, -2}}, {{0, 1}, {0, 2}, {0, 3}});
}

// Every graph the oracle-equivalence suite sweeps (|vertices| <= 8).
inline std::vector<std::pair<std::string, pswf::PlumbingGraph>> small_fixtures() {
    return {
        {"single(-1)", single(-1)},
        {"single(-2)", single(-2)},
        {"single(-3)", single(-3)},
        {"chain(-2,-2)", chain({-2, -2})},
        {"chain(-2,-2,-2)", chain({-2, -2, -2})},
        {"D4", d4()},
        {"seifert(-2;2,2)", seifert22()},
        {"sigma(2,3,7)", sigma(2, 3, 7)},
        {"sigma(2,5,7)", sigma(2, 5, 7)},
        {"E8", e8()},
    };
}

// Graphs carrying a -1 leaf (vertex index given) whose blow-down stays
// negative definite; used by the blow-down invariance suite.
struct BlowFixture {
    std::string name;
    pswf::PlumbingGraph g;
    int leaf;
};

inline std::vector<BlowFixture> blowdown_fixtures() {
    std::vector<BlowFixture> out;
    out.push_back({"chain(-1,-3)", chain({-1, -3}), 0});
    out.push_back({"chain(-1,-4)", chain({-1, -4}), 0});
    out.push_back({"chain(-2,-2,-1)", chain({-2, -2, -1}), 2});
    {
        // Sigma(2,3,7) blown up at the central vertex.
        auto base = sigma(2, 3, 7);
        std::vector<std::pair<int, long long>> vs;
        std::vector<std::pair<int, int>> es = base.edges;
        for (int v = 0; v < base.size(); ++v)
            vs.push_back({v, base.framing[v] - (v == 0 ? 1 : 0)});
        vs.push_back({base.size(), -1});
        es.push_back({0, base.size()});
        out.push_back({"sigma(2,3,7)+blowup", pswf::make_plumbing(vs, es), base.size()});
    }
    {
        // E8 blown up at its short-leg leaf.
        auto base = e8();
        std::vector<std::pair<int, long long>> vs;
        std::vector<std::pair<int, int>> es = base.edges;
        for (int v = 0; v < base.size(); ++v)
            vs.push_back({v, base.framing[v] - (v == 7 ? 1 : 0)});
        vs.push_back({8, -1});
        es.push_back({7, 8});
        out.push_back({"E8+blowup", pswf::make_plumbing(vs, es), 8});
    }
    return out;
}

} // namespace fixtures
