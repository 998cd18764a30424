#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pswf/errors.hpp"
#include "pswf/root.hpp"
#include "pswf/spectrum.hpp"

using namespace pswf;

namespace {

GradedRoot two_leaf_root() {  // leaves 0,0 merged at -2
    GradedRoot r;
    r.leaves = {Rat(0), Rat(0)};
    r.angles = {Rat(-2)};
    r.h = -6;
    return r;
}

}  // namespace

TEST_CASE("s1 model cells mirror leaves and angles") {
    auto r = two_leaf_root();
    auto m = build_s1_model(r, Rat(-2));
    REQUIRE(m.cells.size() == 2);
    CHECK(m.cells[0] == 1);  // (0 - (-2))/2
    CHECK(m.cells[1] == 1);
    REQUIRE(m.glue.size() == 1);
    CHECK(m.glue[0].dim == 0);
    CHECK(m.m == 0);
    CHECK(m.n == Rat(1));

    GradedRoot one;
    one.leaves = {Rat(0)};
    one.h = 0;
    auto m0 = build_s1_model(one, Rat(0));
    REQUIRE(m0.cells.size() == 1);
    CHECK(m0.cells[0] == 0);
    CHECK(m0.n == Rat(0));

    auto x2 = make_Xn(2);
    auto mx2 = build_s1_model(x2.root, Rat(0));
    REQUIRE(mx2.cells.size() == 2);
    CHECK(mx2.cells[0] == 2);
    CHECK(mx2.glue[0].dim == 0);
}

TEST_CASE("coborel inverts the cell model") {
    auto r = two_leaf_root();
    for (Rat h : {Rat(-2), Rat(-4), Rat(-6)}) {
        auto m = build_s1_model(r, h);
        auto rb = coborel(m);
        CHECK(rb.leaves == r.leaves);
        REQUIRE(rb.angles.size() == 1);
        CHECK(*rb.angles[0] == Rat(-2));
    }

    GradedRoot one;
    one.leaves = {Rat(0)};
    one.h = 0;
    CHECK(coborel(build_s1_model(one, Rat(0))).leaves[0] == Rat(0));

    for (long long n = 0; n <= 4; ++n) {
        auto x = make_Xn(n);
        auto rb = coborel(build_s1_model(x.root, x.root.h));
        CHECK(rb.leaves == x.root.leaves);
        CHECK(rb.angles == x.root.angles);
    }
}

TEST_CASE("lowering h suspends the model") {
    auto r = two_leaf_root();
    auto m = build_s1_model(r, Rat(-2));
    auto mlow = build_s1_model(r, Rat(-4));
    CHECK(mlow.cells[0] == m.cells[0] + 1);
    CHECK(mlow.n == m.n + 1);
}

TEST_CASE("model construction rejects bad heights") {
    auto r = two_leaf_root();
    try {
        build_s1_model(r, Rat(0));  // above the angle
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == errc::CutTooHigh);
    }
    try {
        build_s1_model(r, Rat(-1));  // wrong grading coset
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == errc::ValidationError);
    }
}

TEST_CASE("pin2 model records the involution") {
    GradedRoot e8r;
    e8r.leaves = {Rat(2)};
    e8r.h = -6;
    SymmetricGradedRoot e8s{e8r, {0}};
    auto p8 = build_pin2_model(e8s, Rat(-2));
    REQUIRE(p8.cells.size() == 1);
    CHECK(p8.cells[0] == 2);
    REQUIRE(p8.j.has_value());
    CHECK(p8.j->theta == std::vector<int>{0});
    CHECK(p8.j->pairs.empty());

    SymmetricGradedRoot ss{two_leaf_root(), {1, 0}};
    auto ps = build_pin2_model(ss, Rat(-2));
    REQUIRE(ps.cells.size() == 3);
    CHECK(ps.cells[0] == 1);
    CHECK(ps.cells[2] == 0);  // theta cell at the merge vertex
    REQUIRE(ps.j.has_value());
    CHECK(ps.j->theta == std::vector<int>{2});
    CHECK(ps.j->pairs.size() == 1);
}

TEST_CASE("pin2 model lowers h to a quaternionic height") {
    auto x1 = make_Xn(1);
    auto px = build_pin2_model(x1, Rat(0));  // 2*beta - 0 = 0, divisible by 4
    REQUIRE(px.cells.size() == 3);
    CHECK(px.cells[0] == 1);
    CHECK(px.cells[2] == 0);

    auto px2 = build_pin2_model(x1, Rat(-2));  // 2 not divisible by 4: h drops to -4
    CHECK(px2.cells[0] == 3);
    CHECK(px2.n == Rat(2));
}

TEST_CASE("smash grid weights") {
    auto sm = smash({1, 1});
    REQUIRE(sm.weights.size() == 9);
    CHECK(sm.weights[0] == Rat(4));  // corner (0,0): both endpoints
    CHECK(sm.weights[4] == Rat(0));  // center (1,1)
    CHECK(sm.weights[1] == Rat(2));  // edge midpoint

    auto s3 = smash({2});
    REQUIRE(s3.weights.size() == 3);
    CHECK(s3.weights[0] == Rat(4));
    CHECK(s3.weights[1] == Rat(0));
    CHECK(s3.weights[2] == Rat(4));
}

TEST_CASE("formal suspension shifts only the triple") {
    auto m = build_s1_model(two_leaf_root(), Rat(-2));
    auto su = suspend(m, Rat(1));
    CHECK(su.n == Rat(0));
    CHECK(su.cells == m.cells);
    auto sd = suspend(m, Rat(-2));
    CHECK(sd.n == Rat(3));
}

TEST_CASE("contracted mapping cone of a zigzag") {
    std::vector<FormalDifference> d1 = {{1, 0}, {0, 0}, {1, 0}};
    auto cm = contracted_mapping_cone(d1, {IncDir::Left, IncDir::Right});
    REQUIRE(cm.cells.size() == 2);
    CHECK(cm.cells[0] == 1);
    CHECK(cm.glue[0].dim == 0);
    CHECK(cm.n == Rat(0));

    std::vector<FormalDifference> d2 = {{1, 1}, {0, 1}, {1, 1}};
    auto cm2 = contracted_mapping_cone(d2, {IncDir::Left, IncDir::Right});
    CHECK(cm2.cells[0] == 3);  // stabilized by the other B's
    CHECK(cm2.glue[0].dim == 2);
    CHECK(cm2.n == Rat(3));
    auto cb2 = coborel(cm2);
    CHECK(cb2.leaves[0] == Rat(0));
    CHECK(*cb2.angles[0] == Rat(-2));

    auto cm3 = contracted_mapping_cone({{0, 0}}, {});
    REQUIRE(cm3.cells.size() == 1);
    CHECK(cm3.cells[0] == 0);

    try {
        contracted_mapping_cone(d1, {IncDir::Right, IncDir::Right});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == errc::InconsistentDirections);
    }
    std::vector<FormalDifference> d3 = {{1, 0}, {2, 0}, {1, 0}};
    try {
        contracted_mapping_cone(d3, {IncDir::Left, IncDir::Right});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == errc::InconsistentDirections);
    }
}

TEST_CASE("swf type level") {
    auto m = build_s1_model(two_leaf_root(), Rat(-2));
    CHECK(swf_type_level(m) == 0);
    auto mm = m;
    mm.m = -1;
    CHECK(swf_type_level(mm) == 1);

    SpectrumModel wedge;
    wedge.cells = {BigInt(1), BigInt(1)};
    try {
        swf_type_level(wedge);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == errc::NotTypeSWF);
    }
}
