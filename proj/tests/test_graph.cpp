#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>

#include "fixtures.hpp"
#include "isc/graph.hpp"

using namespace isc;

namespace {

// independent test oracle: plain subset scan, no pruning
IndependentSetWitness brute_mis(const Graph& g) {
    IndependentSetWitness best;
    best.cardinality = -1;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.n); ++m) {
        if (!is_independent(g, m)) continue;
        int card = std::popcount(m);
        if (card < best.cardinality) continue;
        std::vector<int> members;
        for (int v = 0; v < g.n; ++v)
            if (m >> v & 1) members.push_back(v);
        if (card > best.cardinality || members < best.members) {
            best.cardinality = card;
            best.members = members;
        }
    }
    return best;
}

} // namespace

TEST_CASE("parse K4 from edge list") {
    Graph g = parse_graph("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3");
    CHECK(g.n == 4);
    CHECK(g.m() == 6);
    for (int v = 0; v < 4; ++v) CHECK(g.degree(v) == 3);
}

TEST_CASE("parse rejects self-loop with line number") {
    try {
        parse_graph("2 1\n0 0");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.code() == "SelfLoop");
        CHECK(e.line() == 2);
    }
}

TEST_CASE("parse error catalogue") {
    CHECK_THROWS_AS(parse_graph("2 1\n0 2"), ParseError);       // out of range
    CHECK_THROWS_AS(parse_graph("3 2\n0 1\n0 1"), ParseError);  // duplicate
    CHECK_THROWS_AS(parse_graph("3 1\n1 0"), ParseError);       // out of order
    CHECK_THROWS_AS(parse_graph("2 1\nzero one"), ParseError);  // malformed
    CHECK_THROWS_AS(parse_graph("2 2\n0 1"), ParseError);       // edge count short
    CHECK_THROWS_AS(parse_graph(""), ParseError);               // missing header
    try {
        parse_graph("4 2\n0 1\n0 7");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.code() == "VertexOutOfRange");
        CHECK(e.line() == 3);
    }
}

TEST_CASE("comments, blank lines, CRLF") {
    Graph g = parse_graph("# cube\r\n\r\n8 12\r\n0 1\n1 2\n2 3\n0 3\n4 5\n5 6\n6 7\n4 7\n"
                          "# spokes\n0 4\n1 5\n2 6\n3 7\n");
    CHECK(g.n == 8);
    CHECK(g.m() == 12);
    for (int v = 0; v < 8; ++v) CHECK(g.degree(v) == 3);
}

TEST_CASE("parse-serialize-parse is identity") {
    for (const auto& g : fixtures::cubic_planar_suite()) {
        std::string once = serialize_graph(g);
        Graph g2 = parse_graph(once);
        CHECK(serialize_graph(g2) == once);
        CHECK(g2.edges == g.edges);
        CHECK(g2.n == g.n);
    }
}

TEST_CASE("validate_cubic_planar") {
    auto k4 = fixtures::k4();
    auto rep = validate_cubic_planar(k4);
    CHECK(rep.is_cubic);
    CHECK(rep.is_planar_candidate);
    CHECK(rep.ok());

    // remove one edge: two vertices drop to degree 2
    Graph broken = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
    rep = validate_cubic_planar(broken);
    CHECK(!rep.is_cubic);
    CHECK(rep.violations.size() == 2);

    // K(3,3) passes the necessary conditions; only the embedder rejects it
    rep = validate_cubic_planar(fixtures::k33());
    CHECK(rep.is_cubic);
    CHECK(rep.is_planar_candidate);
}

TEST_CASE("cubic graphs satisfy |E| = 3n/2") {
    for (const auto& g : fixtures::cubic_planar_suite()) CHECK(2 * g.m() == 3 * g.n);
    CHECK(2 * fixtures::k33().m() == 3 * fixtures::k33().n);
}

TEST_CASE("mis_oracle matches brute enumeration and returns lex-min witness") {
    for (const auto& g : fixtures::cubic_planar_suite()) {
        auto fast = mis_oracle(g);
        auto slow = brute_mis(g);
        CHECK(fast.cardinality == slow.cardinality);
        CHECK(fast.members == slow.members);
        CHECK(static_cast<int>(fast.members.size()) == fast.cardinality);
        std::uint64_t mask = 0;
        for (int v : fast.members) mask |= std::uint64_t{1} << v;
        CHECK(is_independent(g, mask));
    }
}

TEST_CASE("known optima") {
    CHECK(mis_oracle(fixtures::k4()).cardinality == 1);
    CHECK(mis_oracle(fixtures::k4()).members == std::vector<int>{0});
    CHECK(mis_oracle(fixtures::q3()).cardinality == 4);
    CHECK(mis_oracle(fixtures::p2()).cardinality == 1);
    CHECK(mis_oracle(fixtures::p2()).members == std::vector<int>{0});
    CHECK(mis_oracle(fixtures::prism()).cardinality == 2);
    CHECK(mis_oracle(fixtures::petersen()).cardinality == 4);
}

TEST_CASE("no independent set beats the oracle") {
    for (const auto& g : fixtures::cubic_planar_suite()) {
        int best = mis_oracle(g).cardinality;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.n); ++m)
            if (is_independent(g, m)) CHECK(std::popcount(m) <= best);
    }
}

TEST_CASE("oracle limit") {
    CHECK_THROWS_AS(mis_oracle(fixtures::q3(), 6), CapacityError);
}
