#include "pswf/errors.hpp"
#include "pswf/invariants.hpp"
#include "pswf/io.hpp"
#include "pswf/ktheory.hpp"
#include "pswf/lattice.hpp"
#include "pswf/root.hpp"
#include "pswf/spectrum.hpp"
#include "pswf/spinc.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using pswf::Rat;
using ojson = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) pswf::fail(pswf::errc::ParseError, "cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// A graph argument is inline when it is self-describing; anything else is a
// file path ('-' = standard input).
std::string read_source(const std::string& arg) {
    if (arg == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    if (arg.rfind("brieskorn:", 0) == 0 || arg.rfind("seifert:", 0) == 0 ||
        (!arg.empty() && arg[0] == '{'))
        return arg;
    return read_file(arg);
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    f << text;
    if (!f) pswf::fail(pswf::errc::Internal, "cannot write output file '" + out + "'");
}

Rat parse_rat_flag(const std::string& s, const char* flag) {
    try {
        return pswf::rat_parse(s);
    } catch (const std::exception& e) {
        pswf::fail(pswf::errc::ParseError, std::string(flag) + ": " + e.what());
    }
}

const pswf::SpinCClass& pick_class(const std::vector<pswf::SpinCClass>& classes, int idx) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= classes.size())
        pswf::fail(pswf::errc::ValidationError,
                   "--class " + std::to_string(idx) + " out of range (the graph has " +
                       std::to_string(classes.size()) + " spin^c classes)");
    return classes[static_cast<std::size_t>(idx)];
}

ojson rat_json_number(const Rat& v) {
    if (pswf::is_integer(v)) {
        try {
            return ojson(pswf::to_ll(numerator(v)));
        } catch (const std::exception&) {
        }
    }
    return ojson(pswf::rat_str(v));
}

void print_error(bool json_errors, const std::string& code, const std::string& message) {
    if (json_errors) {
        ojson j;
        j["error"] = ojson{{"code", code}, {"message", message}};
        std::cerr << j.dump() << "\n";
    } else {
        std::cerr << "error [" << code << "]: " << message << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    bool json_errors = false;
    for (int i = 1; i < argc; ++i)
        if (std::string(argv[i]) == "--json-errors") json_errors = true;

    CLI::App app{"lattice-homology invariants of negative-definite plumbed 3-manifolds"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help and exit"); // frees -h; --h is an option below
    app.set_help_all_flag("--help-all", "print help for every subcommand");
    app.set_version_flag("--version", "plumbswf 0.1.0");
    app.add_flag("--json-errors", json_errors, "emit errors as single-line JSON on stderr");

    std::string input, out, h_str = "auto", oracle_h, format = "json", smash_s, params_file;
    std::string family = "brieskorn";
    std::vector<std::string> report_files;
    int klass = 0, max_dim = 2, threads = 0;
    long long an = -1, u_trunc = 0;
    std::size_t cap = pswf::kDefaultRegionCap;
    bool oracle = false, pin2 = false, exact = false, bound = false;

    auto add_common = [&](CLI::App* s, bool with_class) {
        s->fallthrough();
        s->set_help_flag("--help", "print help and exit");
        s->add_option("input", input, "graph: file path, '-', JSON, or brieskorn:/seifert: text")
            ->required();
        if (with_class)
            s->add_option("--class", klass, "spin^c class index (sorted order)")
                ->capture_default_str();
        s->add_option("--cap", cap, "superlevel region size cap")->capture_default_str();
        s->add_option("-o,--out", out, "write to a file instead of stdout");
    };

    CLI::App* c_analyze = app.add_subcommand("analyze", "full invariant report for one class");
    add_common(c_analyze, true);
    c_analyze->add_flag("--oracle", oracle, "run the cube-complex homology cross-check");
    c_analyze->add_option("--oracle-h", oracle_h, "oracle window height (default: cut height + 6)")
        ->needs("--oracle");
    c_analyze->add_option("--max-dim", max_dim, "highest degree the oracle checks")
        ->capture_default_str();

    CLI::App* c_root = app.add_subcommand("root", "graded root of one class");
    add_common(c_root, true);
    c_root->add_option("--h", h_str, "truncation grading ('auto' = stabilized cut)")
        ->capture_default_str();
    c_root->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "dot", "svg"}))
        ->capture_default_str();

    CLI::App* c_spectrum = app.add_subcommand("spectrum", "cell model of the root's spectrum");
    add_common(c_spectrum, true);
    c_spectrum->add_option("--h", h_str, "model height ('auto' = stabilized cut, coset-aligned)")
        ->capture_default_str();
    c_spectrum->add_flag("--pin2", pin2, "Pin(2)-refined model (self-conjugate classes only)");

    CLI::App* c_oracle = app.add_subcommand("oracle", "cube-complex homology of one class");
    add_common(c_oracle, true);
    c_oracle->add_option("--h", h_str, "window height (rational)")->required();
    c_oracle->add_option("--max-dim", max_dim, "highest homological degree")
        ->capture_default_str();
    c_oracle->add_option("--u-trunc", u_trunc, "U-power truncation (0 = automatic)")
        ->capture_default_str();

    CLI::App* c_spinc = app.add_subcommand("spinc", "list the spin^c classes");
    add_common(c_spinc, false);

    CLI::App* c_sum = app.add_subcommand("sum", "kappa of a connected sum from report files");
    c_sum->fallthrough();
    c_sum->set_help_flag("--help", "print help and exit");
    c_sum->add_option("reports", report_files, "invariant report JSON files")->required();
    auto* o_exact = c_sum->add_flag("--exact", exact, "exact formula (even count, n_i >= 2)");
    auto* o_bound = c_sum->add_flag("--bound", bound, "upper bound (default)");
    o_exact->excludes(o_bound);
    c_sum->add_option("-o,--out", out, "write to a file instead of stdout");

    CLI::App* c_kideal = app.add_subcommand("kappa-ideal", "ideal and kappa of a model family");
    c_kideal->fallthrough();
    c_kideal->set_help_flag("--help", "print help and exit");
    auto* o_an = c_kideal->add_option("--an", an, "interval model X_n index (n >= 0)");
    auto* o_smash = c_kideal->add_option("--smash", smash_s, "smash factor list, e.g. 2,2,2,2");
    o_an->excludes(o_smash);
    c_kideal->add_option("-o,--out", out, "write to a file instead of stdout");

    CLI::App* c_atlas = app.add_subcommand("atlas", "batch invariant table as CSV");
    c_atlas->fallthrough();
    c_atlas->set_help_flag("--help", "print help and exit");
    c_atlas->add_option("--family", family, "input family")
        ->check(CLI::IsMember({"brieskorn"}))
        ->capture_default_str();
    c_atlas->add_option("--params", params_file, "file with one parameter list per line")
        ->required();
    c_atlas->add_option("--threads", threads, "worker threads (0 = hardware)")
        ->capture_default_str();
    c_atlas->add_option("-o,--out", out, "write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        print_error(json_errors, "UsageError", e.what());
        return 2;
    }

    try {
        if (*c_analyze) {
            pswf::PlumbingGraph g = pswf::parse_input(read_source(input));
            auto classes = pswf::enumerate_spinc_classes(g);
            pswf::AnalyzeOptions opt;
            opt.oracle = oracle;
            opt.oracle_max_dim = max_dim;
            opt.cap = cap;
            if (!oracle_h.empty()) opt.oracle_h = parse_rat_flag(oracle_h, "--oracle-h");
            pswf::InvariantReport rep = pswf::analyze(g, pick_class(classes, klass), opt);
            for (const auto& c : rep.checks)
                if (c.status == pswf::CheckStatus::Fail)
                    std::cerr << "warning: check '" << c.name << "' failed: " << c.detail << "\n";
            emit(out, pswf::report_to_json(rep));
        } else if (*c_root || *c_spectrum) {
            pswf::PlumbingGraph g = pswf::parse_input(read_source(input));
            auto classes = pswf::enumerate_spinc_classes(g);
            const pswf::SpinCClass& cls = pick_class(classes, klass);
            Rat h = h_str == "auto" ? pswf::auto_cut_height(g, cls, cap)
                                    : parse_rat_flag(h_str, "--h");
            pswf::SymmetricGradedRoot s = normalize(pswf::superlevel_root(g, cls, h, cap).sym);
            if (*c_root) {
                if (format == "dot")
                    emit(out, pswf::root_to_dot(s));
                else if (format == "svg")
                    emit(out, pswf::root_to_svg(s));
                else
                    emit(out, pswf::root_to_json(s));
            } else {
                if (pin2 && !cls.self_conjugate)
                    pswf::fail(pswf::errc::NotSelfConjugate,
                               "--pin2 needs a self-conjugate spin^c class");
                Rat hh = h;
                if (h_str == "auto") { // align into the root's grading coset
                    Rat leaf0 = s.root.leaves.front();
                    hh = leaf0 - 2 * Rat(pswf::rat_ceil((leaf0 - h) / 2));
                }
                pswf::SpectrumModel m =
                    pin2 ? pswf::build_pin2_model(s, hh) : pswf::build_s1_model(s.root, hh);
                emit(out, pswf::spectrum_to_json(m));
            }
        } else if (*c_oracle) {
            pswf::PlumbingGraph g = pswf::parse_input(read_source(input));
            auto classes = pswf::enumerate_spinc_classes(g);
            auto mods = pswf::full_homology_oracle(g, pick_class(classes, klass),
                                                   parse_rat_flag(h_str, "--h"), max_dim, u_trunc,
                                                   cap);
            emit(out, pswf::oracle_to_json(mods));
        } else if (*c_spinc) {
            pswf::PlumbingGraph g = pswf::parse_input(read_source(input));
            emit(out, pswf::spinc_to_json(pswf::enumerate_spinc_classes(g)));
        } else if (*c_sum) {
            std::vector<pswf::ProjectiveSummand> ins;
            for (const std::string& f : report_files) {
                pswf::InvariantReport r = pswf::report_from_json(read_source(f));
                if (!r.projective || !r.mu_bar)
                    pswf::fail(pswf::errc::NotProjective,
                               "report '" + f + "' has no certified projective data");
                ins.push_back(pswf::ProjectiveSummand{*r.mu_bar, r.delta, r.projective->first});
            }
            Rat k = pswf::kappa_connected_sum(ins, exact ? pswf::SumMode::Exact
                                                         : pswf::SumMode::Bound);
            ojson j;
            j[exact ? "kappa" : "kappa_upper"] = rat_json_number(k);
            emit(out, j.dump() + "\n");
        } else if (*c_kideal) {
            pswf::RGIdeal I;
            if (o_an->count()) {
                I = pswf::ideal_of_An(an);
            } else if (o_smash->count()) {
                auto rows = pswf::parse_params_file(smash_s);
                if (rows.size() != 1)
                    pswf::fail(pswf::errc::ParseError, "--smash: expected one integer list");
                I = pswf::ideal_of_smash(rows.front());
            } else {
                pswf::fail(pswf::errc::ValidationError, "pass exactly one of --an / --smash");
            }
            long long z_power = -1;
            pswf::BigInt w_coeff = 0;
            for (const pswf::RGElement& gen : I.gens) {
                if (gen.a == 0 && !gen.p.empty())
                    z_power = static_cast<long long>(gen.p.size()) - 1;
                else if (gen.p.empty())
                    w_coeff = gen.a;
            }
            ojson j;
            j["ideal"] = ojson{{"z_power", z_power}, {"w_coefficient", w_coeff.str()}};
            j["kappa"] = pswf::to_ll(pswf::kappa_from_ideal(I));
            emit(out, j.dump() + "\n");
        } else if (*c_atlas) {
            auto params = pswf::parse_params_file(read_file(params_file));
            auto rows = pswf::atlas_brieskorn(params, threads, {});
            emit(out, pswf::atlas_to_csv(rows));
        }
        return 0;
    } catch (const pswf::Error& e) {
        std::string msg = e.what(), pre = e.code() + ": ";
        if (msg.rfind(pre, 0) == 0) msg = msg.substr(pre.size());
        print_error(json_errors, e.code(), msg);
        return (e.code() == pswf::errc::ParseError || e.code() == pswf::errc::ValidationError) ? 2
                                                                                              : 1;
    } catch (const std::exception& e) {
        print_error(json_errors, "Internal", e.what());
        return 1;
    }
}
