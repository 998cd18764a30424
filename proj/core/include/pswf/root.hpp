#pragma once

#include "pswf/numeric.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pswf {

// One Z[U]-tower: top grading and torsion length (number of nonzero graded
// pieces); no length = the tower reaches the truncation grading.
struct Tower {
    Rat top;
    std::optional<BigInt> len;
    bool operator==(const Tower&) const = default;
};
bool tower_less(const Tower& a, const Tower& b);

// Planar presentation of a graded root: leaf gradings in planar order and the
// angle (merge) grading between each consecutive pair. A null angle means the
// merge happens below the truncation grading h (region disconnected at h).
struct GradedRoot {
    std::vector<Rat> leaves;
    std::vector<std::optional<Rat>> angles; // size = leaves.size() - 1
    Rat h = 0;
};

// Root plus a grading-preserving involution on its leaves.
struct SymmetricGradedRoot {
    GradedRoot root;
    std::vector<int> J;
};

void validate_root(const GradedRoot& r);          // throws ValidationError
void validate_symmetric(const SymmetricGradedRoot& r);
bool is_connected(const GradedRoot& r);           // no null angles

// Merge grading of planar leaves i, j = min angle between them (i == j gives
// the leaf grading); null if separated by a null angle.
std::optional<Rat> merge_level(const GradedRoot& r, int i, int j);

// Removes degenerate leaves (tower contained in a neighbor's). surv maps each
// original leaf index to the surviving leaf that absorbed it.
struct NormalizeResult {
    GradedRoot root;
    std::vector<int> surv;
};
NormalizeResult normalize_full(const GradedRoot& r);
GradedRoot normalize(const GradedRoot& r);
SymmetricGradedRoot normalize(const SymmetricGradedRoot& r);

Rat delta(const GradedRoot& r);                    // (max leaf grading)/2
Rat beta(const SymmetricGradedRoot& r);            // (max J-invariant vertex grading)/2
std::pair<Rat, Rat> alpha_gamma(const SymmetricGradedRoot& r);

// Two leaves at 2n merged at 0 with J swapping them; n = 0 is a single tower.
SymmetricGradedRoot make_Xn(long long n);

GradedRoot shift_root(const GradedRoot& r, const Rat& s);
SymmetricGradedRoot shift_root(const SymmetricGradedRoot& r, const Rat& s);

// Planar-re-embedding-invariant key: equal keys iff isomorphic as graded
// Z[U]-modules presented by roots.
std::string canonical_key(const GradedRoot& r);

// Keep only structure at gradings >= t (angles below t become null).
GradedRoot cut_at(const GradedRoot& r, const Rat& t);
bool equal_above(const GradedRoot& a, const GradedRoot& b, const Rat& t);

// Tower decomposition by the elder rule; sorted by tower_less.
std::vector<Tower> towers_of_root(const GradedRoot& r);

// Degree-s piece of the module: leaf clusters under merge >= s, each cluster a
// sorted leaf list, clusters ordered by leftmost leaf. Empty if s above all
// leaves.
std::vector<std::vector<int>> branches_at(const GradedRoot& r, const Rat& s);

// Leaf-wise images of a grading-preserving Z[U]-map: coeff[i] is an integer
// vector over the target's branch basis at the source leaf's grading.
struct RootHom {
    std::vector<std::vector<BigInt>> coeff;
};

struct LocalMapResult {
    bool exists = false;
    std::optional<RootHom> witness;
};

// Decides existence of a grading-preserving Z[U]-map src -> dst that becomes
// an isomorphism after inverting U (deep stem coefficient +-1), optionally
// J-equivariant. Different grading cosets: false. Inputs must be connected.
LocalMapResult local_map_exists(const SymmetricGradedRoot& src, const SymmetricGradedRoot& dst,
                                bool equivariant);

bool verify_hom(const SymmetricGradedRoot& src, const SymmetricGradedRoot& dst,
                const RootHom& hom, bool equivariant);

// Composition of witnesses a->b and b->c as a witness a->c.
RootHom compose_homs(const SymmetricGradedRoot& a, const SymmetricGradedRoot& b,
                     const SymmetricGradedRoot& c, const RootHom& f, const RootHom& g);

// J-orbit parameters: leaf grading 2d, merge-with-J-partner grading 2b
// (fixed leaves have b = d).
struct OrbitParam {
    Rat d;
    Rat b;
    bool fixed = false;
    bool operator==(const OrbitParam&) const = default;
};
std::vector<OrbitParam> orbit_params(const SymmetricGradedRoot& r);

// Minimal monotone subroot locally equivalent (both directions, certified) to
// r. Throws CertificationFailed if the staircase greedy and the exhaustive
// fallback both fail.
SymmetricGradedRoot monotone_subroot(const SymmetricGradedRoot& r);

// (n, shift) with n = delta - beta, shift = 2 beta, iff r is locally
// equivalent (J-equivariantly, both directions) to X_n shifted.
std::optional<std::pair<BigInt, Rat>> is_projective(const SymmetricGradedRoot& r);

} // namespace pswf
