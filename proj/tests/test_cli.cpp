#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "siq/cli.hpp"

using namespace siq;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) {
    return std::string(FIXTURE_DIR) + "/" + name + ".quiver";
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("help and usage errors") {
    Run help = cli({"--help"});
    CHECK(help.code == 0);
    CHECK(contains(help.out, "gens"));
    CHECK(contains(help.out, "twovertex"));
    CHECK(help.err.empty());

    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"gens"}).code == 2);  // missing file
    Run sub_help = cli({"verify", "--help"});
    CHECK(sub_help.code == 0);
    CHECK(contains(sub_help.out, "--suite"));
}

TEST_CASE("gens and count") {
    Run gens = cli({"gens", fx("two_loops")});
    CHECK(gens.code == 0);
    CHECK(gens.out ==
          "tr a | mdeg {a:1}\n"
          "tr b | mdeg {b:1}\n"
          "det a\n"
          "tr a b | mdeg {a:1,b:1}\n"
          "det b\n");

    Run count = cli({"count", fx("two_loops")});
    CHECK(count.code == 0);
    CHECK(count.out == "5\n");

    // char 2 keeps the all-ones trace on four loops, char 0 drops it
    Run c2 = cli({"count", fx("four_loops"), "--char", "2"});
    CHECK(c2.out == "19\n");
    Run c0 = cli({"count", fx("four_loops"), "--char", "0"});
    CHECK(c0.out == "18\n");
    Run c3 = cli({"count", fx("four_loops"), "--char", "3"});
    CHECK(c3.out == "18\n");

    CHECK(cli({"count", fx("nope")}).code == 2);
    CHECK(cli({"count", fx("two_loops"), "--char", "4"}).code == 2);

    Run again = cli({"gens", fx("two_loops")});
    CHECK(again.out == gens.out);
}

TEST_CASE("poly prints traces, determinants of words, and arrow dets") {
    Run tr = cli({"poly", fx("two_loops"), "--path", "a b"});
    CHECK(tr.code == 0);
    CHECK(contains(tr.out, "x[a][1][1]^1 * x[b][1][1]^1"));

    Run det_word = cli({"poly", fx("two_loops"), "--path", "a", "--sigma", "2"});
    CHECK(det_word.code == 0);
    CHECK(contains(det_word.out, "-1 * x[a][1][2]^1 * x[a][2][1]^1"));

    Run det_arrow = cli({"poly", fx("two_loops"), "--det", "a"});
    CHECK(det_arrow.out == det_word.out);

    Run det_char2 = cli({"poly", fx("two_loops"), "--det", "a", "--char", "2"});
    CHECK(contains(det_char2.out, "+ 1 * x[a][1][2]^1 * x[a][2][1]^1"));

    CHECK(cli({"poly", fx("two_loops")}).code == 2);
    CHECK(cli({"poly", fx("two_loops"), "--path", "a", "--det", "a"}).code == 2);
    CHECK(cli({"poly", fx("one_arrow"), "--path", "z"}).code == 2);  // open word
    CHECK(cli({"poly", fx("two_loops"), "--path", "a", "--sigma", "3"}).code == 2);
    CHECK(cli({"poly", fx("two_loops"), "--det", "zzz"}).code == 2);
}

TEST_CASE("decomp lists the splits of the ladder word") {
    Run r = cli({"decomp", fx("ex_decomp"), "--path",
                 "a1 a2 b4 b1 b2 c4 c1 c2 d4 d1 d2 d3 c3 b3 a3 a4"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "decompositions: 8"));
    CHECK(contains(r.out, "decomposition 1 admissible"));
    CHECK(contains(r.out, "part a1 b1 c1 d1 d2 d3 c3 b3 a3 a4"));
    CHECK(contains(r.out, "diagram 1-2:2 1-3:2 1-4:2"));
    CHECK(contains(r.out, "diagram 1-2:2 2-3:2 3-4:2"));
    CHECK(contains(r.out, "path admissible"));

    // a round trip is one primitive part, hence trivially admissible
    Run trip = cli({"decomp", fx("ex_decomp"), "--path", "a1 a1*"});
    CHECK(trip.code == 0);
    CHECK(contains(trip.out, "decompositions: 1"));
    CHECK(contains(trip.out, "diagram -"));
    CHECK(contains(trip.out, "path admissible"));

    // four loops through one vertex pairwise intersect: an all-ones K4
    Run bad = cli({"decomp", fx("four_loops"), "--path", "a b c d"});
    CHECK(bad.code == 0);
    CHECK(contains(bad.out, "decomposition 1 inadmissible"));
    CHECK(contains(bad.out, "path not admissible"));

    CHECK(cli({"decomp", fx("ex_decomp"), "--path", "a1 a2"}).code == 2);  // open
    CHECK(cli({"decomp", fx("ex_decomp"), "--path", "a1 a2 a3 a4 a1 a2 a3 a4"}).code == 2);
}

TEST_CASE("verify runs the suites and reports") {
    Run rel = cli({"verify", fx("one_loop"), "--suite", "relations"});
    CHECK(rel.code == 0);
    CHECK(contains(rel.out, "PASS relation.square"));
    CHECK(contains(rel.out, "PASS relation.adjugate"));
    CHECK(!contains(rel.out, "FAIL"));

    Run rel2 = cli({"verify", fx("one_loop"), "--suite", "relations", "--char", "2"});
    CHECK(rel2.code == 0);
    CHECK(!contains(rel2.out, "FAIL"));

    Run all = cli({"verify", fx("loop_arrow"), "--max-deg", "6"});
    CHECK(all.code == 0);
    CHECK(contains(all.out, "PASS minimality."));
    CHECK(contains(all.out, "PASS spanning."));
    CHECK(contains(all.out, "PASS invariance."));

    CHECK(cli({"verify", fx("one_loop"), "--suite", "bogus"}).code == 2);
    CHECK(cli({"verify", fx("one_loop"), "--max-deg", "0"}).code == 2);
    CHECK(cli({"verify", fx("one_loop"), "--max-deg", "13"}).code == 2);
}

TEST_CASE("twovertex counts and generating sets") {
    Run pair = cli({"twovertex", "4", "4", "4"});
    CHECK(pair.code == 0);
    CHECK(pair.out == "char 2: 2734\nchar not 2: 1167\n");

    CHECK(cli({"twovertex", "4", "4", "4", "--char", "2"}).out == "2734\n");
    CHECK(cli({"twovertex", "4", "4", "4", "--char", "0"}).out == "1167\n");
    CHECK(cli({"twovertex", "2", "2", "2", "--char", "2"}).out == "46\n");
    CHECK(cli({"twovertex", "2", "2", "2", "--char", "0"}).out == "46\n");

    Run gens = cli({"twovertex", "1", "1", "1", "--gens", "--char", "0"});
    CHECK(gens.code == 0);
    CHECK(contains(gens.out, "det x1"));
    CHECK(contains(gens.out, "det z1"));
    CHECK(contains(gens.out, "tr x1 z1 y1 z1* | mdeg {x1:1,y1:1,z1:2}"));

    CHECK(cli({"twovertex", "0", "0", "0"}).code == 2);
    CHECK(cli({"twovertex", "4", "4"}).code == 2);
    CHECK(cli({"twovertex", "9", "9", "9", "--gens"}).code == 2);
}
