#pragma once

#include "pswf/lattice.hpp"
#include "pswf/plumbing.hpp"
#include "pswf/root.hpp"
#include "pswf/spinc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pswf {

enum class CheckStatus { Pass, Fail, NotApplicable };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::NotApplicable;
    std::string detail;
};

// One invariant report per (graph, spin^c class). alpha/beta/gamma, mu_bar and
// kappa exist only when the class is self-conjugate (the involution acts on
// the root); d = 2*delta always.
struct InvariantReport {
    std::string graph_hash;
    int graph_size = 0;
    BigInt graph_det;
    int class_id = -1;
    CharVector class_rep;
    bool self_conjugate = false;
    Rat d, delta;
    std::optional<Rat> alpha, beta, gamma, mu_bar, kappa;
    std::optional<std::pair<BigInt, Rat>> projective; // (n, shift)
    SymmetricGradedRoot root; // normalized; J = identity when not self-conjugate
    bool has_involution = false;
    Rat cut_height;
    std::vector<CheckResult> checks;
};

struct AnalyzeOptions {
    bool oracle = false;          // run the cube-complex homology cross-check
    int oracle_max_dim = 2;
    std::optional<Rat> oracle_h;  // oracle window height; default cut_height + 6
    std::size_t cap = kDefaultRegionCap;
};

// Full pipeline: stabilized cut height, superlevel root, normalization,
// invariant extraction, Neumann-Siebenmann cross-check, projectivity, kappa;
// optionally the homology-oracle comparison. Every cross-check lands in
// `checks` rather than silently passing.
InvariantReport analyze(const PlumbingGraph& g, const SpinCClass& cls, const AnalyzeOptions& opt = {});

// Re-runs every arithmetical cross-check on the report's own data (root
// validity, d = 2*delta, gamma = beta, alpha - delta in {0,1}, alpha = beta
// mod 2, beta = -mu_bar, kappa in {-mu_bar, -mu_bar + 2}, projective data
// consistency). Checks that need the graph (the oracle run) are reported as
// recorded in the report.
std::vector<CheckResult> verify_report(const InvariantReport& r);

bool all_checks_pass(const std::vector<CheckResult>& checks); // Fail-free

} // namespace pswf
