#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "pswf/errors.hpp"
#include "pswf/invariants.hpp"
#include "pswf/io.hpp"
#include "pswf/lattice.hpp"

#include <string>

using namespace pswf;

TEST_CASE("parse_input accepts JSON and the two text forms") {
    auto a = parse_input("brieskorn:2,3,7");
    CHECK(a.size() == 4);
    auto b = parse_input("  brieskorn: 2, 3, 7 ");
    CHECK(graph_hash(a) == graph_hash(b));

    auto s = parse_input("seifert:-2;(2,1),(2,1)");
    CHECK(s.size() == 3);
    CHECK(graph_hash(s) == graph_hash(fixtures::seifert22()));

    auto j = parse_input(graph_to_json(fixtures::e8()));
    CHECK(graph_hash(j) == graph_hash(fixtures::e8()));
}

TEST_CASE("parse_input diagnostics") {
    auto code_of = [](const std::string& text) -> std::string {
        try {
            parse_input(text);
            return "no error";
        } catch (const Error& e) {
            return e.code();
        }
    };
    CHECK(code_of("") == errc::ParseError);
    CHECK(code_of("brieskorn:2,x") == errc::ParseError);
    CHECK(code_of("seifert:-2") == errc::ParseError);
    CHECK(code_of("seifert:-2;(2)") == errc::ParseError);
    CHECK(code_of("seifert:-2;(2,1") == errc::ParseError);
    CHECK(code_of("{\"vertices\": [") == errc::ParseError);
    CHECK(code_of("{}") == errc::ParseError);
    CHECK(code_of("wat") == errc::ParseError);

    // construction failures are reported as parse errors carrying the cause
    try {
        parse_input("brieskorn:2,4");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == errc::ParseError);
        CHECK(std::string(e.what()).find("coprime") != std::string::npos);
    }
    try {
        parse_input("brieskorn:2,3");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == errc::ParseError);
        CHECK(std::string(e.what()).find("fiber") != std::string::npos);
    }
}

TEST_CASE("graph json round trip") {
    for (auto& [name, g] : fixtures::small_fixtures()) {
        CAPTURE(name);
        auto j = graph_to_json(g);
        auto g2 = graph_from_json(j);
        CHECK(g2.framing == g.framing);
        CHECK(g2.edges == g.edges);
        CHECK(graph_to_json(g2) == j);  // emit is a fixed point
    }
}

TEST_CASE("root json round trip") {
    auto g = fixtures::sigma(2, 3, 7);
    auto cls = enumerate_spinc_classes(g);
    auto rc = superlevel_root(g, cls[0], Rat(-6));
    auto j = root_to_json(rc.sym);
    auto r2 = root_from_json(j);
    CHECK(r2.root.leaves == rc.sym.root.leaves);
    CHECK(r2.root.angles == rc.sym.root.angles);
    CHECK(r2.root.h == rc.sym.root.h);
    CHECK(r2.J == rc.sym.J);
    CHECK(root_to_json(r2) == j);

    // fractional gradings survive
    auto g3 = fixtures::single(-3);
    auto cl3 = enumerate_spinc_classes(g3);
    for (auto& c : cl3) {
        auto rc3 = superlevel_root(g3, c, max_class_weight(g3, c) - 6);
        auto j3 = root_to_json(rc3.sym);
        auto back = root_from_json(j3);
        CHECK(back.root.leaves == rc3.sym.root.leaves);
        CHECK(back.root.h == rc3.sym.root.h);
    }

    CHECK_THROWS_AS(root_from_json("{\"leaves\": []}"), Error);
    CHECK_THROWS_AS(root_from_json("{}"), Error);
}

TEST_CASE("spectrum json round trip") {
    auto g = fixtures::sigma(2, 3, 7);
    auto cls = enumerate_spinc_classes(g);
    auto rc = superlevel_root(g, cls[0], Rat(-6));
    auto m = build_pin2_model(rc.sym, Rat(-6));
    auto j = spectrum_to_json(m);
    auto m2 = spectrum_from_json(j);
    CHECK(m2.cells == m.cells);
    CHECK(m2.glue == m.glue);
    CHECK(m2.m == m.m);
    CHECK(m2.n == m.n);
    REQUIRE(m2.j.has_value() == m.j.has_value());
    if (m.j) {
        CHECK(m2.j->theta == m.j->theta);
        CHECK(m2.j->pairs == m.j->pairs);
    }
    CHECK(spectrum_to_json(m2) == j);
}

TEST_CASE("report json is byte-stable through a round trip") {
    AnalyzeOptions opt;
    for (auto& [name, g] : {std::pair<std::string, PlumbingGraph>{"s237", fixtures::sigma(2, 3, 7)},
                            {"seifert22", fixtures::seifert22()}}) {
        CAPTURE(name);
        for (auto& cls : enumerate_spinc_classes(g)) {
            auto r = analyze(g, cls, opt);
            auto j = report_to_json(r);
            auto r2 = report_from_json(j);
            CHECK(report_to_json(r2) == j);
            CHECK(r2.d == r.d);
            CHECK(r2.kappa == r.kappa);
            CHECK(r2.class_rep == r.class_rep);
            CHECK(r2.root.root.leaves == r.root.root.leaves);
        }
    }

    CHECK_THROWS_AS(report_from_json("{\"schema\": \"nope\"}"), Error);
    try {
        report_from_json("{\"schema\": \"other/9\"}");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == errc::ParseError);
    }
}

TEST_CASE("drawings are deterministic") {
    auto g = fixtures::sigma(2, 3, 7);
    auto cls = enumerate_spinc_classes(g);
    auto rc = superlevel_root(g, cls[0], Rat(-6));

    auto d1 = root_to_dot(rc.sym);
    auto d2 = root_to_dot(rc.sym);
    CHECK(d1 == d2);
    CHECK(d1.find("graph") != std::string::npos);
    CHECK(d1.find("--") != std::string::npos);  // at least one edge

    auto s1 = root_to_svg(rc.sym);
    CHECK(s1 == root_to_svg(rc.sym));
    CHECK(s1.find("<svg") != std::string::npos);
    CHECK(s1.find("</svg>") != std::string::npos);

    // fractional gradings render without throwing
    auto g3 = fixtures::single(-3);
    auto cl3 = enumerate_spinc_classes(g3);
    auto rc3 = superlevel_root(g3, cl3[0], max_class_weight(g3, cl3[0]) - 4);
    CHECK(root_to_svg(rc3.sym).find("<svg") != std::string::npos);
}

TEST_CASE("params files") {
    auto rows = parse_params_file("# comment\n2,3,7\n2 3 11\n\n  # another\n2,3,13\n");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == (std::vector<long long>{2, 3, 7}));
    CHECK(rows[1] == (std::vector<long long>{2, 3, 11}));
    CHECK(rows[2] == (std::vector<long long>{2, 3, 13}));

    try {
        parse_params_file("2,3,7\nbad line\n");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == errc::ParseError);
        CHECK(std::string(e.what()).find("2") != std::string::npos);  // cites the line
    }
}

TEST_CASE("atlas rows are deterministic across thread counts") {
    std::vector<std::vector<long long>> params = {{2, 3, 13}, {2, 3, 7}};
    auto r1 = atlas_brieskorn(params, 1);
    auto r3 = atlas_brieskorn(params, 3);
    REQUIRE(r1.size() == 2);
    REQUIRE(r3.size() == 2);
    // sorted by parameters regardless of input or completion order
    CHECK(r1[0].params == (std::vector<long long>{2, 3, 7}));
    CHECK(r1[1].params == (std::vector<long long>{2, 3, 13}));
    auto csv1 = atlas_to_csv(r1);
    auto csv3 = atlas_to_csv(r3);
    CHECK(csv1 == csv3);
    CHECK(csv1.find("family") != std::string::npos);
    for (auto& row : r1) CHECK(all_checks_pass(verify_report(row.report)));
}
