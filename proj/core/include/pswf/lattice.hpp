#pragma once

#include "pswf/plumbing.hpp"
#include "pswf/root.hpp"
#include "pswf/spinc.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pswf {

// Cube of characteristic vectors: vertices base + sum of 2v* over subsets of
// directions (dimension = |directions|).
struct LatticeCube {
    CharVector base;
    std::vector<int> directions; // sorted vertex ids
};

// One graded chain-homology group as a Z[U]-module: towers with top grading
// and torsion length (no length = U acts freely all the way down).
struct GradedModule {
    int d = 0;
    std::vector<Tower> towers;
};

// Weight of a cube: minimum over its 2^d vertex weights.
Rat cube_weight(const PlumbingGraph& g, const LatticeCube& cube);

inline constexpr std::size_t kDefaultRegionCap = 1'000'000;

// Greatest weight attained on the class (the grading of the top leaf), found
// by a closest-vector descent; no region is materialized.
Rat max_class_weight(const PlumbingGraph& g, const SpinCClass& cls);

// All characteristic vectors of the class with weight >= h, sorted
// lexicographically by values. Finite since M is negative definite.
std::vector<CharVector> enumerate_superlevel_points(const PlumbingGraph& g, const SpinCClass& cls,
                                                    const Rat& h,
                                                    std::size_t cap = kDefaultRegionCap);

// Graded root of H_0: union-find over superlevel points with edges k, k+2v*,
// processed by decreasing weight (lexicographic tie-breaking), truncated at h.
// The result is normalized.
GradedRoot h0_graded_root(const PlumbingGraph& g, const SpinCClass& cls, const Rat& h,
                          std::size_t cap = kDefaultRegionCap);

// Same computation keeping the conjugation symmetry: for a self-conjugate
// class, J is induced by k -> -k (has_involution true); otherwise J = id.
struct RootComputation {
    SymmetricGradedRoot sym;
    bool has_involution = false;
    std::vector<CharVector> leaf_reps; // birth representative per planar leaf
    Rat max_weight = 0;
    bool connected_at_h = false;
};
RootComputation superlevel_root(const PlumbingGraph& g, const SpinCClass& cls, const Rat& h,
                                std::size_t cap = kDefaultRegionCap);

// Independent chain-complex oracle: cubical complex on the superlevel region,
// boundary with U-powers over Z[U]/U^N, homology per grading via integer
// Smith normal form; towers assembled from the inclusion maps between
// superlevel complexes. u_trunc = 0 picks the default (window span)/2 + 2.
std::vector<GradedModule> full_homology_oracle(const PlumbingGraph& g, const SpinCClass& cls,
                                               const Rat& h, int max_dim, long long u_trunc = 0,
                                               std::size_t cap = kDefaultRegionCap);

// Oracle plus per-level diagnostics (level gradings descending; betti[i][d]).
struct OracleDetail {
    std::vector<GradedModule> modules;
    std::vector<Rat> levels;
    std::vector<std::vector<long long>> betti;
    std::size_t cube_count = 0;
};
OracleDetail full_homology_oracle_detailed(const PlumbingGraph& g, const SpinCClass& cls,
                                           const Rat& h, int max_dim, long long u_trunc = 0,
                                           std::size_t cap = kDefaultRegionCap);

// Graded root of the subcomplex spanned by a lattice path (consecutive
// entries differ by some 2v*, all entries distinct). Normalized; truncated at
// the minimum weight along the path.
GradedRoot path_root(const PlumbingGraph& g, const std::vector<CharVector>& path);

// A path whose root reproduces h0_graded_root above the path's own minimum
// weight: leaf representatives joined through highest-possible corridors,
// verified against the union-find root before returning.
std::vector<CharVector> find_representative_path(const PlumbingGraph& g, const SpinCClass& cls,
                                                 std::size_t cap = kDefaultRegionCap);

// Truncation height at which the visible part of the root has stabilized:
// descends from the class maximum until two consecutive drops change nothing,
// then backs off a fixed margin for safety.
Rat auto_cut_height(const PlumbingGraph& g, const SpinCClass& cls,
                    std::size_t cap = kDefaultRegionCap);

} // namespace pswf
