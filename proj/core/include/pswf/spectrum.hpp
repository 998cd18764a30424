#pragma once

#include "pswf/root.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace pswf {

// Combinatorial cell model of an S^1- (optionally Pin(2)-) equivariant
// suspension spectrum: complex-representation sphere cells joined along common
// subspheres, plus the formal (de)suspension triple. Cells are recorded by
// dimension only; attaching data beyond the common-subsphere dimensions is
// never needed downstream.
struct SpectrumModel {
    struct Glue {
        int a = 0, b = 0;     // cell ids
        BigInt dim;           // complex dimension of the common subsphere
        bool operator==(const Glue&) const = default;
    };
    struct JStructure {
        std::vector<int> theta;                 // cells fixed by j
        std::vector<std::pair<int, int>> pairs; // cells exchanged by j
    };
    std::vector<BigInt> cells; // complex dimension per cell, planar order
    std::vector<Glue> glue;
    long long m = 0; // formal real (R-tilde) desuspensions
    Rat n = 0;       // formal complex desuspensions
    std::optional<JStructure> j;
};

// Grid cell model of a smash product of interval models: one factor per axis,
// positions {-1, 0, +1} per axis (base-3 index, digit 0/1/2), cell weight =
// sum of the factors' position weights.
struct ProductCellModel {
    std::vector<long long> factor_dims; // n_i per factor
    std::vector<Rat> weights;           // 3^n entries
    long long m = 0;
    Rat n = 0;
};

// One cell per leaf of dimension (leaf - h)/2, one gluing per angle of
// dimension (angle - h)/2, triple (0, -h/2). h must lie in the root's grading
// coset and at or below every angle.
SpectrumModel build_s1_model(const GradedRoot& r, const Rat& h);

// Mayer-Vietoris read-back of the co-Borel tower presentation: one tower per
// cell with top 2*dim - 2n, glued along subtowers from the gluing dims.
// Inverse of build_s1_model up to the choice of h.
GradedRoot coborel(const SpectrumModel& model);

// Pin(2) refinement: h is first lowered (by 2 at a time) until 2*beta - h is
// divisible by 4, making the central theta cell quaternionic; the involution
// must mirror the planar order. Leaf cells come out in J-mirrored pairs; when
// no leaf is fixed the theta cell is the central merge vertex, glued into both
// adjacent cells.
SpectrumModel build_pin2_model(const SymmetricGradedRoot& r, const Rat& h);

// Product of the [-1,1] interval models of X_{n_i} (endpoint weights 2*n_i,
// interior weight 0); suspension triples add.
ProductCellModel smash(const std::vector<long long>& n_list);

// Formal complex suspension by r: cells untouched, n decremented (so a
// desuspension is a negative r).
SpectrumModel suspend(const SpectrumModel& model, const Rat& r);

// A formal difference of complex representations, A - B.
struct FormalDifference {
    long long plus_dim = 0;
    long long minus_dim = 0;
};

// Inclusion direction between consecutive formal differences.
enum class IncDir { Left, Right };

// Model of the contracted mapping cone of a zigzag of formal differences:
// stabilize V_i' = A_i + sum of the other B_j, glue peak spheres along valley
// subspheres, record the total B as formal desuspension. Directions must
// alternate with peaks at both ends and each valley no bigger than its
// neighbors.
SpectrumModel contracted_mapping_cone(const std::vector<FormalDifference>& diffs,
                                      const std::vector<IncDir>& dirs);

// Level l such that the S^1-fixed subcomplex is S^{l R-tilde}: the cell models
// here have fixed set S^0 before formal suspension, so l = -m. Requires the
// gluing graph to be connected (a disjoint union of spheres is not a sphere).
long long swf_type_level(const SpectrumModel& model);

} // namespace pswf
