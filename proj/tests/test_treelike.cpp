#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "siq/enumerate.hpp"
#include "siq/treelike.hpp"

using namespace siq;

static Quiver fixture(const std::string& name) {
    return parse_quiver_file(std::string(FIXTURE_DIR) + "/" + name + ".quiver");
}

static const FieldSpec both[] = {FieldSpec::prime_field(2), FieldSpec::rationals()};

TEST_CASE("hat graph merges parallels and strips loops") {
    Quiver q = fixture("ex_treelike");
    HatGraph h = hat_graph(q);
    CHECK(h.vertices.size() == 5);
    REQUIRE(h.edges.size() == 4);
    CHECK(h.edges[0].u == "u1");
    CHECK(h.edges[0].v == "u2");
    CHECK(h.edges[0].arrows == std::vector<std::string>{"b1", "b2"});
    CHECK(h.edges[3].arrows == std::vector<std::string>{"e"});
    CHECK(h.loops.at("u1") == std::vector<std::string>{"a"});
    CHECK(h.loops.at("u5") == std::vector<std::string>{"f"});
    CHECK(h.loops.count("u2") == 0);
    CHECK(h.is_tree());
}

TEST_CASE("tree recognition") {
    CHECK(hat_graph(fixture("two_parallel")).is_tree());
    CHECK(hat_graph(fixture("two_cycle")).is_tree());
    CHECK(hat_graph(fixture("four_loops")).is_tree());
    CHECK(hat_graph(fixture("tl_c")).is_tree());
    CHECK(!hat_graph(fixture("triangle")).is_tree());
    CHECK(!hat_graph(fixture("ex_decomp")).is_tree());
    CHECK_THROWS_AS(
        good_colorings(fixture("triangle"), hat_graph(fixture("triangle")),
                       FieldSpec::rationals()),
        input_error);
}

TEST_CASE("good colorings need connected non-empty support with parity") {
    Quiver q = fixture("ex_treelike");
    HatGraph h = hat_graph(q);

    Coloring empty;
    empty.edge_arrows.assign(h.edges.size(), {});
    CHECK(!is_good_coloring(q, h, empty));

    Coloring loop = empty;
    loop.vertex_loops["u1"] = {"a"};
    CHECK(is_good_coloring(q, h, loop));

    // two colored loops with nothing joining them
    Coloring split = loop;
    split.vertex_loops["u5"] = {"f"};
    CHECK(!is_good_coloring(q, h, split));

    // a size-one edge whose far end has nothing else must carry a loop there
    Coloring lone = empty;
    lone.edge_arrows[0] = {"b1"};
    CHECK(!is_good_coloring(q, h, lone));
    Coloring anchored = lone;
    anchored.vertex_loops["u1"] = {"a"};
    CHECK(!is_good_coloring(q, h, anchored));  // u2 end still bare
    anchored.edge_arrows[1] = {"c1", "c2"};    // even edge hangs off u2
    CHECK(is_good_coloring(q, h, anchored));

    // a fuller choice: loop, one single edge, two even edges
    Coloring featured = empty;
    featured.vertex_loops["u1"] = {"a"};
    featured.edge_arrows[0] = {"b1"};
    featured.edge_arrows[1] = {"c1", "c2"};
    featured.edge_arrows[2] = {"d1", "d2"};
    CHECK(is_good_coloring(q, h, featured));

    // size three is neither one nor even
    Quiver p3 = fixture("three_parallel");
    HatGraph hp = hat_graph(p3);
    Coloring odd;
    odd.edge_arrows.assign(1, {"z1", "z2", "z3"});
    CHECK(!is_good_coloring(p3, hp, odd));

    Coloring bad_shape;
    bad_shape.edge_arrows.assign(h.edges.size(), {});
    bad_shape.vertex_loops["u1"] = {"f"};  // f is not a loop at u1
    CHECK_THROWS_AS(is_good_coloring(q, h, bad_shape), input_error);
}

TEST_CASE("the worked coloring yields its word") {
    Quiver q = fixture("ex_treelike");
    HatGraph h = hat_graph(q);
    Coloring c;
    c.edge_arrows.assign(h.edges.size(), {});
    c.vertex_loops["u1"] = {"a"};
    c.edge_arrows[0] = {"b1"};
    c.edge_arrows[1] = {"c1", "c2"};
    c.edge_arrows[2] = {"d1", "d2"};
    PathWord w = coloring_word(q, h, c);
    CHECK(format_path(w) == "a b1 c1 c2* d1 d2 b1*");
    CHECK(is_tree_path(q, w));
}

TEST_CASE("coloring words hit the promised multidegrees") {
    Quiver q = fixture("ex_treelike");
    HatGraph h = hat_graph(q);
    for (FieldSpec fs : both) {
        auto colorings = good_colorings(q, h, fs);
        CHECK(!colorings.empty());
        for (const auto& c : colorings) {
            PathWord w = coloring_word(q, h, c);
            CHECK(is_tree_path(q, w));
            Multidegree d = mdeg(q, w);
            Multidegree expect;
            for (const auto& [v, loops] : c.vertex_loops)
                for (const auto& name : loops) expect[name] = 1;
            for (size_t e = 0; e < h.edges.size(); ++e)
                for (const auto& name : c.edge_arrows[e])
                    expect[name] = c.edge_arrows[e].size() == 1 ? 2 : 1;
            CHECK(d == expect);
        }
    }
}

TEST_CASE("coloring enumeration matches the general one on tree-like quivers") {
    for (const char* name : {"one_loop", "one_arrow", "two_loops", "two_parallel",
                             "three_parallel", "two_cycle", "loop_arrow", "tl_a", "tl_b",
                             "tl_c", "four_loops"}) {
        Quiver q = fixture(name);
        for (FieldSpec fs : both) {
            CAPTURE(name);
            CAPTURE(fs.ch);
            GeneratorSet from_colorings = treelike_generating_set(q, fs);
            GeneratorSet general = minimal_generating_set(q, fs);
            CHECK(from_colorings.dets == general.dets);
            REQUIRE(from_colorings.traces.size() == general.traces.size());
            for (const auto& [d, w] : general.traces) {
                CHECK(from_colorings.traces.count(d) == 1);
                // the representatives are tree paths of the same multidegree
                CHECK(mdeg(q, from_colorings.traces.at(d)) == d);
            }
        }
    }
}

TEST_CASE("bigger tree-like sets stay consistent across characteristic") {
    Quiver q = fixture("ex_treelike");
    GeneratorSet g2 = treelike_generating_set(q, FieldSpec::prime_field(2));
    GeneratorSet g0 = treelike_generating_set(q, FieldSpec::rationals());
    CHECK(g2.size() == 56);
    CHECK(g0.size() == 56);  // no edge here is big enough to differ
    for (const auto& [d, w] : g0.traces) CHECK(g2.traces.count(d) == 1);
}

TEST_CASE("two-vertex quivers") {
    Quiver q = two_vertex_quiver(2, 1, 1);
    CHECK(q.vertices == std::vector<std::string>{"u", "v"});
    CHECK(q.arrows.size() == 4);
    CHECK(q.arrow("x1").head == "u");
    CHECK(q.arrow("z1").head == "u");
    CHECK(q.arrow("z1").tail == "v");
    CHECK(two_vertex_quiver(2, 0, 0).vertices == std::vector<std::string>{"u"});
    CHECK(two_vertex_quiver(0, 1, 0).vertices == std::vector<std::string>{"v"});
    CHECK_THROWS_AS(two_vertex_quiver(0, 0, 0), input_error);
    CHECK_THROWS_AS(two_vertex_quiver(-1, 1, 1), input_error);
}

TEST_CASE("two-vertex families are tree paths with distinct multidegrees") {
    for (FieldSpec fs : both) {
        GeneratorSet gs = two_vertex_generating_set(2, 2, 2, fs);
        Quiver q = two_vertex_quiver(2, 2, 2);
        CHECK(gs.size() == 46);
        for (const auto& [d, w] : gs.traces) {
            CHECK(is_tree_path(q, w));
            CHECK(mdeg(q, w) == d);
        }
    }
}

TEST_CASE("family enumeration agrees with the closed-form count") {
    for (FieldSpec fs : both)
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; q <= 3; ++q)
                for (int l = 0; l <= 4; ++l) {
                    if (p + q + l == 0) continue;
                    CAPTURE(p);
                    CAPTURE(q);
                    CAPTURE(l);
                    CAPTURE(fs.ch);
                    CHECK(two_vertex_generating_set(p, q, l, fs).size() ==
                          two_vertex_count(p, q, l, fs));
                }
}

TEST_CASE("two-vertex families match the general enumeration") {
    for (FieldSpec fs : both)
        for (int p = 0; p <= 2; ++p)
            for (int q = 0; q <= 2; ++q)
                for (int l = 0; l <= 2; ++l) {
                    if (p + q + l == 0) continue;
                    CAPTURE(p);
                    CAPTURE(q);
                    CAPTURE(l);
                    CAPTURE(fs.ch);
                    GeneratorSet fam = two_vertex_generating_set(p, q, l, fs);
                    GeneratorSet gen = minimal_generating_set(two_vertex_quiver(p, q, l), fs);
                    REQUIRE(fam.size() == gen.size());
                    for (const auto& [d, w] : gen.traces) CHECK(fam.traces.count(d) == 1);
                }
}

TEST_CASE("the flagship counts") {
    CHECK(two_vertex_count(4, 4, 4, FieldSpec::prime_field(2)) == 2734);
    CHECK(two_vertex_count(4, 4, 4, FieldSpec::rationals()) == 1167);
    CHECK(two_vertex_generating_set(4, 4, 4, FieldSpec::prime_field(2)).size() == 2734);
    CHECK(two_vertex_generating_set(4, 4, 4, FieldSpec::rationals()).size() == 1167);
    // odd primes follow the not-2 branch
    CHECK(two_vertex_count(4, 4, 4, FieldSpec::prime_field(3)) == 1167);
}

TEST_CASE("caps on the constructions") {
    CHECK_THROWS_AS(two_vertex_generating_set(9, 9, 9, FieldSpec::rationals()), input_error);
    std::vector<Arrow> arrows;
    for (int i = 0; i < 15; ++i) arrows.push_back({"a" + std::to_string(i), "u", "u"});
    Quiver big = validate_quiver({"u"}, arrows);
    CHECK_THROWS_AS(treelike_generating_set(big, FieldSpec::rationals()), input_error);
}
