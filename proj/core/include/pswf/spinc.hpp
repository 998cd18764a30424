#pragma once

#include "pswf/plumbing.hpp"

#include <optional>
#include <vector>

namespace pswf {

// Characteristic vector: k(v) = framing(v) mod 2 componentwise.
struct CharVector {
    std::vector<BigInt> values;
    bool operator==(const CharVector&) const = default;
    bool operator<(const CharVector& o) const { return values < o.values; }
};

// Equivalence class of characteristic vectors under k ~ k + 2Mx. The
// representative is the canonical residue of the values modulo the column
// lattice of 2M, so equal classes have equal reps.
struct SpinCClass {
    CharVector rep;
    bool self_conjugate = false;
    std::optional<std::vector<int>> wu; // 0/1 per vertex, set iff self_conjugate
};

bool is_characteristic(const PlumbingGraph& g, const CharVector& k);

// Class of a given characteristic vector (canonicalized).
SpinCClass spinc_class_of(const PlumbingGraph& g, const CharVector& k);

// All |det M| classes, sorted by representative.
std::vector<SpinCClass> enumerate_spinc_classes(const PlumbingGraph& g);

bool is_self_conjugate(const PlumbingGraph& g, const SpinCClass& c);

// Unique 0/1 solution of M·w ≡ diag(M) mod 2 attached to the class: reduce the
// integer solution of M·c = k mod 2. Throws NotSelfConjugate.
std::vector<int> wu_element(const PlumbingGraph& g, const SpinCClass& c);

// k² = kᵗ M⁻¹ k, exact.
Rat char_square(const PlumbingGraph& g, const CharVector& k);

// w(k) = (k² + |Γ|)/4.
Rat weight(const PlumbingGraph& g, const CharVector& k);

// μ̄ = (σ − wu²)/8 with σ = −|Γ|.
Rat neumann_siebenmann(const PlumbingGraph& g, const SpinCClass& c);

} // namespace pswf
