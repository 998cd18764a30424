#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pswf/io.hpp"
#include "pswf/invariants.hpp"
#include "pswf/root.hpp"

#include "json.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out, err;
};

fs::path scratch() {
    static fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("pswf-cli-test-" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

// Runs the installed binary through the shell so stdout/stderr/exit status are
// all observable. `args` is spliced verbatim: quote shell metacharacters.
RunResult run_cli(const std::string& args, const std::string& stdin_text = "") {
    static int seq = 0;
    fs::path base = scratch() / ("run" + std::to_string(seq++));
    fs::path fin = base.string() + ".in", fout = base.string() + ".out",
             ferr = base.string() + ".err";
    spit(fin, stdin_text);
    std::string cmd = std::string(PSWF_CLI_PATH) + " " + args + " <" + fin.string() + " >" +
                      fout.string() + " 2>" + ferr.string();
    int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(fout);
    r.err = slurp(ferr);
    return r;
}

}  // namespace

TEST_CASE("version and help") {
    auto v = run_cli("--version");
    CHECK(v.code == 0);
    CHECK(v.out.find("plumbswf 0.1.0") != std::string::npos);

    auto h = run_cli("--help");
    CHECK(h.code == 0);
    CHECK(h.out.find("analyze") != std::string::npos);
    CHECK(h.out.find("atlas") != std::string::npos);

    auto hs = run_cli("analyze --help");
    CHECK(hs.code == 0);
    CHECK(hs.out.find("--oracle") != std::string::npos);
}

TEST_CASE("analyze emits a verifiable report") {
    auto r = run_cli("analyze brieskorn:2,3,7");
    REQUIRE(r.code == 0);
    CHECK(r.err.empty());
    auto rep = pswf::report_from_json(r.out);
    CHECK(rep.d == pswf::Rat(0));
    REQUIRE(rep.kappa.has_value());
    CHECK(*rep.kappa == pswf::Rat(1));
    CHECK(pswf::all_checks_pass(pswf::verify_report(rep)));

    // same graph through stdin
    auto r2 = run_cli("analyze -", "brieskorn:2,3,7\n");
    REQUIRE(r2.code == 0);
    CHECK(r2.out == r.out);

    // oracle-backed run
    auto r3 = run_cli("analyze brieskorn:2,3,7 --oracle");
    REQUIRE(r3.code == 0);
    auto rep3 = pswf::report_from_json(r3.out);
    bool oracle_pass = false;
    for (auto& c : rep3.checks)
        if (c.name == "oracle-h0" && c.status == pswf::CheckStatus::Pass) oracle_pass = true;
    CHECK(oracle_pass);
}

TEST_CASE("analyze picks classes by sorted index") {
    auto r = run_cli("analyze 'seifert:-2;(2,1),(2,1)' --class 1");
    REQUIRE(r.code == 0);
    auto rep = pswf::report_from_json(r.out);
    CHECK(rep.class_id == 1);
    CHECK_FALSE(rep.self_conjugate);

    auto bad = run_cli("analyze 'seifert:-2;(2,1),(2,1)' --class 7");
    CHECK(bad.code == 2);
    CHECK(bad.err.find("class") != std::string::npos);
}

TEST_CASE("error reporting modes") {
    auto r = run_cli("analyze brieskorn:2,4");
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("error [ParseError]") != std::string::npos);
    CHECK(r.err.find("coprime") != std::string::npos);

    auto j = run_cli("analyze brieskorn:2,4 --json-errors");
    CHECK(j.code == 2);
    auto parsed = nlohmann::json::parse(j.err);
    CHECK(parsed["error"]["code"] == "ParseError");
    CHECK(j.err.find('\n') == j.err.size() - 1);  // single line

    auto u = run_cli("analyze --not-a-flag");
    CHECK(u.code == 2);

    auto c = run_cli("root brieskorn:2,3,7 --h 1");
    CHECK(c.code == 1);  // CutTooHigh: a domain error, not a usage error
    CHECK(c.err.find("CutTooHigh") != std::string::npos);
}

TEST_CASE("root formats") {
    auto j = run_cli("root brieskorn:2,3,7 --h -2 --format json");
    REQUIRE(j.code == 0);
    auto root = pswf::root_from_json(j.out);
    REQUIRE(root.root.leaves.size() == 2);
    CHECK(root.root.leaves[0] == pswf::Rat(0));
    REQUIRE(root.root.angles[0].has_value());
    CHECK(*root.root.angles[0] == pswf::Rat(-2));
    CHECK(root.J == (std::vector<int>{1, 0}));

    auto d = run_cli("root brieskorn:2,3,7 --h -2 --format dot");
    REQUIRE(d.code == 0);
    CHECK(d.out.find("graph") != std::string::npos);

    auto s = run_cli("root brieskorn:2,3,7 --h -2 --format svg");
    REQUIRE(s.code == 0);
    CHECK(s.out.find("<svg") != std::string::npos);

    // the default height stabilizes automatically
    auto a = run_cli("root brieskorn:2,3,7");
    REQUIRE(a.code == 0);
    auto ar = pswf::root_from_json(a.out);
    CHECK(ar.root.leaves.size() == 2);
    CHECK(ar.root.h == pswf::Rat(-12));
}

TEST_CASE("oracle subcommand") {
    auto r = run_cli("oracle brieskorn:2,3,7 --h -6");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 3);  // degrees 0..2
    CHECK(j[0]["towers"].size() == 2);
    CHECK(j[1]["towers"].empty());
    CHECK(j[2]["towers"].empty());
}

TEST_CASE("spinc subcommand lists all classes") {
    auto r = run_cli("spinc 'seifert:-2;(2,1),(2,1)'");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j.size() == 4);
    int sc = 0;
    for (auto& row : j) sc += row["self_conjugate"].get<bool>() ? 1 : 0;
    CHECK(sc == 2);
}

TEST_CASE("spectrum subcommand") {
    auto r = run_cli("spectrum brieskorn:2,3,7 --pin2");
    REQUIRE(r.code == 0);
    auto m = pswf::spectrum_from_json(r.out);
    REQUIRE(m.cells.size() == 3);
    REQUIRE(m.j.has_value());
    CHECK(m.j->theta == std::vector<int>{2});
    CHECK(m.j->pairs == (std::vector<std::pair<int, int>>{{0, 1}}));

    // pin2 refuses non-self-conjugate classes
    auto bad = run_cli("spectrum 'seifert:-2;(2,1),(2,1)' --class 1 --pin2");
    CHECK(bad.code == 1);
    CHECK(bad.err.find("NotSelfConjugate") != std::string::npos);
}

TEST_CASE("sum combines report files") {
    fs::path a = scratch() / "a.json", b = scratch() / "b.json";
    REQUIRE(run_cli("analyze brieskorn:2,3,7 -o " + a.string()).code == 0);
    REQUIRE(run_cli("analyze brieskorn:2,3,7 -o " + b.string()).code == 0);

    auto r = run_cli("sum --bound " + a.string() + " " + b.string());
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["kappa_upper"] == 0);

    auto e = run_cli("sum --exact " + a.string() + " " + b.string());
    CHECK(e.code == 1);
    CHECK(e.err.find("ExactHypothesisViolated") != std::string::npos);
}

TEST_CASE("kappa-ideal subcommand") {
    auto r = run_cli("kappa-ideal --an 3");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["kappa"] == 2);
    CHECK(j["ideal"]["z_power"] == 2);

    auto s = run_cli("kappa-ideal --smash 2,2,2,2");
    REQUIRE(s.code == 0);
    auto js = nlohmann::json::parse(s.out);
    CHECK(js["kappa"] == 4);
    CHECK(js["ideal"]["z_power"] == 4);
    CHECK(js["ideal"]["w_coefficient"] == "2");

    auto none = run_cli("kappa-ideal");
    CHECK(none.code == 2);

    auto both = run_cli("kappa-ideal --an 1 --smash 2,2");
    CHECK(both.code == 2);
}

TEST_CASE("atlas subcommand") {
    fs::path params = scratch() / "params.txt";
    spit(params, "2,3,13\n2,3,7\n# comment\n");
    auto r = run_cli("atlas --params " + params.string() + " --threads 2");
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row1, row2;
    REQUIRE(std::getline(lines, header));
    REQUIRE(std::getline(lines, row1));
    REQUIRE(std::getline(lines, row2));
    CHECK(header.rfind("family,params", 0) == 0);
    CHECK(row1.find("2 3 7") != std::string::npos);
    CHECK(row2.find("2 3 13") != std::string::npos);

    auto r2 = run_cli("atlas --params " + params.string() + " --threads 1");
    CHECK(r2.out == r.out);

    fs::path out = scratch() / "atlas.csv";
    auto r3 = run_cli("atlas --params " + params.string() + " -o " + out.string());
    REQUIRE(r3.code == 0);
    CHECK(slurp(out) == r.out);
}
