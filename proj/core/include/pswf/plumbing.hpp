#pragma once

#include "pswf/intmatrix.hpp"
#include "pswf/numeric.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pswf {

// Weighted tree of framed vertices. Immutable after construction; all derived
// data (adjacency, intersection matrix, definiteness, exact inverse) is
// computed once by make_plumbing.
struct PlumbingGraph {
    std::vector<long long> framing;             // indexed by vertex id 0..n-1
    std::vector<std::pair<int, int>> edges;     // unordered pairs, a < b
    std::vector<std::vector<int>> adj;
    IntMatrix M;                                // intersection matrix
    BigInt det;                                 // det(M)
    bool negative_definite = false;
    RatMatrix Minv;                             // set iff negative_definite

    int size() const { return static_cast<int>(framing.size()); }
};

// Validates: ids 0..n-1 used exactly once, edges form a tree (connected,
// acyclic), no self-loops or duplicate edges. Throws ValidationError.
PlumbingGraph make_plumbing(const std::vector<std::pair<int, long long>>& vertices,
                            const std::vector<std::pair<int, int>>& edges);

IntMatrix intersection_matrix(const PlumbingGraph& g);
bool is_negative_definite(const PlumbingGraph& g);

// Star-shaped graph of the Brieskorn sphere Sigma(a_1,...,a_k); pairwise
// coprime a_i >= 2, k >= 3. Central framing e0 = -(1 + sum b_i A/a_i)/A with
// (A/a_i) b_i = -1 mod a_i, legs from negative continued fractions a_i/b_i.
PlumbingGraph from_brieskorn(const std::vector<long long>& a);

// Star graph with given central framing and legs (alpha_i, beta_i),
// 0 < beta_i < alpha_i; leg framings from the negative continued fraction of
// alpha_i/beta_i. Negative-definiteness is computed, not assumed.
PlumbingGraph from_seifert(long long e0, const std::vector<std::pair<long long, long long>>& legs);

// Negative continued fraction a/b = c_1 - 1/(c_2 - ...), all c_j >= 2.
std::vector<long long> negative_continued_fraction(long long a, long long b);

// Removes a (-1)-framed leaf and adds 1 to its neighbor's framing.
PlumbingGraph blow_down(const PlumbingGraph& g, int v);

struct Cycle {
    std::vector<BigInt> c; // coefficient per vertex
    bool operator==(const Cycle&) const = default;
};

// (x, E_u) for a cycle x, i.e. (M x)_u.
BigInt cycle_pair(const PlumbingGraph& g, const Cycle& x, int u);
// chi(x) = -(x^2 + K(x))/2 with K(E_v) = -framing(v) - 2.
BigInt cycle_chi(const PlumbingGraph& g, const Cycle& x);

// Artin fundamental cycle by Laufer's loop, starting from E_{start}.
// The result is independent of the start vertex (tested).
Cycle laufer_fundamental_cycle(const PlumbingGraph& g, int start = 0);

bool is_rational(const PlumbingGraph& g);

struct ARResult {
    bool almost_rational = false; // certified AR
    bool undetermined = false;    // search cap hit without a certificate
    std::optional<int> witness;   // vertex whose framing decrement works
};
// Certifies AR by decrementing one framing by N = 1..cap and re-testing
// rationality; rationality is monotone under framing decrease.
ARResult is_almost_rational(const PlumbingGraph& g, long long cap = 64);

// Label-invariant canonical form of the framed tree (AHU-style); equal strings
// iff the graphs are isomorphic as framed trees.
std::string tree_canonical_string(const PlumbingGraph& g);

// Stable hash of the canonical form, for report metadata.
std::string graph_hash(const PlumbingGraph& g);

} // namespace pswf
