#pragma once

#include "pswf/invariants.hpp"
#include "pswf/lattice.hpp"
#include "pswf/plumbing.hpp"
#include "pswf/root.hpp"
#include "pswf/spectrum.hpp"
#include "pswf/spinc.hpp"

#include <string>
#include <vector>

namespace pswf {

// Accepts the JSON graph schema ({"vertices":[{"id","framing"}],"edges":[[a,b]]})
// or the shorthands "brieskorn:2,3,7" / "seifert:-1;(2,1),(3,1),(7,1)".
// ParseError diagnostics cite the line (JSON) or field; construction errors of
// the shorthand families (NotCoprime, ...) surface inside the ParseError text.
PlumbingGraph parse_input(const std::string& text);

// All emitters are pure functions of their argument and byte-stable; every
// *_to_json below re-parses to an equal value through its *_from_json partner.
std::string graph_to_json(const PlumbingGraph& g);
PlumbingGraph graph_from_json(const std::string& text);

std::string root_to_json(const SymmetricGradedRoot& r);
SymmetricGradedRoot root_from_json(const std::string& text);

std::string spectrum_to_json(const SpectrumModel& m);
SpectrumModel spectrum_from_json(const std::string& text);

// Versioned schema "plumb-swf/1"; rationals as "p" / "p/q" strings.
std::string report_to_json(const InvariantReport& r);
InvariantReport report_from_json(const std::string& text);

std::string oracle_to_json(const std::vector<GradedModule>& mods);

std::string spinc_to_json(const std::vector<SpinCClass>& classes);

// Dendrogram drawings of a graded root (leaves in planar order, merge height =
// angle grading, stem down to the truncation grading). No timestamps, no
// randomness: byte-stable.
std::string root_to_dot(const SymmetricGradedRoot& r);
std::string root_to_svg(const SymmetricGradedRoot& r);

struct AtlasRow {
    std::string family;
    std::vector<long long> params;
    InvariantReport report;
};

// One line per parameter list: integers separated by commas or spaces,
// '#' starts a comment. ParseError cites the line number.
std::vector<std::vector<long long>> parse_params_file(const std::string& text);

// Analyzes the (unique, self-conjugate) spin^c class of each Brieskorn sphere
// in `params` with a worker pool. Rows are sorted by parameters and identical
// for every thread count; threads <= 0 picks the hardware concurrency.
std::vector<AtlasRow> atlas_brieskorn(const std::vector<std::vector<long long>>& params,
                                      int threads, const AnalyzeOptions& opt = {});

// Fixed columns: family,params,size,det,d,delta,alpha,beta,gamma,mu_bar,kappa,
// projective_n. Inapplicable entries are empty.
std::string atlas_to_csv(const std::vector<AtlasRow>& rows);

} // namespace pswf
