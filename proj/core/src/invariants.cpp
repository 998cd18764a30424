#include "pswf/invariants.hpp"

#include "pswf/errors.hpp"
#include "pswf/ktheory.hpp"

#include <algorithm>

namespace pswf {

namespace {

void add(std::vector<CheckResult>& out, std::string name, CheckStatus st, std::string detail = "") {
    out.push_back({std::move(name), st, std::move(detail)});
}

void add_bool(std::vector<CheckResult>& out, std::string name, bool ok, std::string detail = "") {
    add(out, std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail));
}

// The arithmetical identities shared by analyze and verify_report.
void arithmetic_checks(const InvariantReport& r, std::vector<CheckResult>& out) {
    add_bool(out, "d-is-2delta", r.d == 2 * r.delta);
    if (r.alpha && r.beta && r.gamma) {
        add_bool(out, "gamma-equals-beta", *r.gamma == *r.beta);
        Rat ad = *r.alpha - r.delta;
        add_bool(out, "alpha-range-parity",
                 (ad == 0 || ad == 1) && is_integer((*r.alpha - *r.beta) / 2),
                 "alpha - delta in {0,1}, alpha = beta mod 2");
        if (r.mu_bar)
            add_bool(out, "beta-equals-minus-mu-bar", *r.beta == -*r.mu_bar);
        else
            add(out, "beta-equals-minus-mu-bar", CheckStatus::NotApplicable, "no mu_bar recorded");
        if (r.kappa && r.mu_bar) {
            Rat gap = *r.kappa + *r.mu_bar;
            add_bool(out, "kappa-corollary", gap == 0 || gap == 2, "kappa + mu_bar in {0,2}");
        } else {
            add(out, "kappa-corollary", CheckStatus::NotApplicable, "no kappa recorded");
        }
        if (r.projective)
            add_bool(out, "projective-consistency",
                     Rat(r.projective->first) == r.delta - *r.beta &&
                         r.projective->second == 2 * *r.beta && r.projective->first >= 0);
    } else {
        add(out, "gamma-equals-beta", CheckStatus::NotApplicable, "class not self-conjugate");
        add(out, "alpha-range-parity", CheckStatus::NotApplicable, "class not self-conjugate");
        add(out, "beta-equals-minus-mu-bar", CheckStatus::NotApplicable, "class not self-conjugate");
        add(out, "kappa-corollary", CheckStatus::NotApplicable, "class not self-conjugate");
    }
}

} // namespace

InvariantReport analyze(const PlumbingGraph& g, const SpinCClass& cls, const AnalyzeOptions& opt) {
    InvariantReport r;
    r.graph_hash = graph_hash(g);
    r.graph_size = g.size();
    r.graph_det = g.det;
    SpinCClass canon = spinc_class_of(g, cls.rep);
    auto classes = enumerate_spinc_classes(g);
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].rep == canon.rep) r.class_id = static_cast<int>(i);
    if (r.class_id < 0) fail(errc::Internal, "class representative missing from enumeration");
    r.class_rep = canon.rep;
    r.self_conjugate = canon.self_conjugate;

    ARResult ar = is_almost_rational(g);
    add(r.checks, "almost-rational",
        ar.almost_rational ? CheckStatus::Pass
                           : (ar.undetermined ? CheckStatus::NotApplicable : CheckStatus::Fail),
        ar.undetermined
            ? "undetermined within the search cap"
            : (ar.witness ? "witness vertex " + std::to_string(*ar.witness) : std::string()));

    r.cut_height = auto_cut_height(g, canon, opt.cap);
    RootComputation rc = superlevel_root(g, canon, r.cut_height, opt.cap);
    r.has_involution = rc.has_involution;
    SymmetricGradedRoot sym = normalize(rc.sym);
    r.root = sym;
    r.delta = delta(sym.root);
    r.d = 2 * r.delta;
    if (rc.has_involution) {
        r.beta = beta(sym);
        auto ag = alpha_gamma(sym);
        r.alpha = ag.first;
        r.gamma = ag.second;
        r.mu_bar = neumann_siebenmann(g, canon);
        r.kappa = kappa_report(sym);
        r.projective = is_projective(sym);
    }
    arithmetic_checks(r, r.checks);

    if (opt.oracle) {
        // The cross-check needs only the stabilized structure, so it runs in a
        // shallower (cheaper) window than the reported cut by default.
        Rat oh = opt.oracle_h ? *opt.oracle_h : r.cut_height + 6;
        OracleDetail det = full_homology_oracle_detailed(g, canon, oh, opt.oracle_max_dim,
                                                         0, opt.cap);
        auto rt = towers_of_root(h0_graded_root(g, canon, oh, opt.cap));
        add_bool(r.checks, "oracle-h0", det.modules.at(0).towers == rt,
                 "cube-complex H_0 towers at h = " + rat_str(oh) +
                     " equal the union-find root's");
        bool vanish = true;
        for (std::size_t d = 1; d < det.modules.size(); ++d)
            if (!det.modules[d].towers.empty()) vanish = false;
        add(r.checks, "oracle-higher-vanishing",
            vanish ? CheckStatus::Pass
                   : (ar.almost_rational ? CheckStatus::Fail : CheckStatus::NotApplicable),
            vanish ? "" : "nonzero H_d in the window");
    } else {
        add(r.checks, "oracle-h0", CheckStatus::NotApplicable, "oracle not requested");
        add(r.checks, "oracle-higher-vanishing", CheckStatus::NotApplicable, "oracle not requested");
    }
    return r;
}

std::vector<CheckResult> verify_report(const InvariantReport& r) {
    std::vector<CheckResult> out;
    bool root_ok = true;
    try {
        validate_symmetric(r.root);
    } catch (const Error& e) {
        root_ok = false;
        add(out, "root-valid", CheckStatus::Fail, e.what());
    }
    if (root_ok) {
        add(out, "root-valid", CheckStatus::Pass);
        add_bool(out, "delta-matches-root", r.delta == delta(r.root.root));
        if (r.beta && r.has_involution)
            add_bool(out, "beta-matches-root", *r.beta == beta(r.root));
    }
    arithmetic_checks(r, out);
    for (const char* name : {"almost-rational", "oracle-h0", "oracle-higher-vanishing"}) {
        auto it = std::find_if(r.checks.begin(), r.checks.end(),
                               [&](const CheckResult& c) { return c.name == name; });
        if (it != r.checks.end())
            out.push_back(*it);
        else
            add(out, name, CheckStatus::NotApplicable, "not recorded");
    }
    return out;
}

bool all_checks_pass(const std::vector<CheckResult>& checks) {
    return std::none_of(checks.begin(), checks.end(),
                        [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

} // namespace pswf
