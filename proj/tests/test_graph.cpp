#include <doctest.h>

#include "contmean/graph.hpp"
#include "contmean/rng.hpp"
#include "contmean/shortest_paths.hpp"
#include "test_util.hpp"

using namespace contmean;
using contmean::testing::close_rel;

TEST_CASE("edge list parsing builds a validated graph") {
    ParseResult r = parse_graph("a b 1\nb c 1");
    CHECK(r.graph.vertex_count() == 3);
    CHECK(r.graph.edge_count() == 2);
    CHECK(r.graph.total_length() == doctest::Approx(2.0));
    CHECK(r.graph.label(0) == "a");
    CHECK(r.graph.label(2) == "c");
    CHECK(r.warnings.empty());
}

TEST_CASE("comments and blank lines are ignored") {
    ParseResult r = parse_graph("# header\n a b 1.5 # trailing\n\nb c 2.5\n");
    CHECK(r.graph.edge_count() == 2);
    CHECK(r.graph.total_length() == doctest::Approx(4.0));
}

TEST_CASE("json parsing") {
    ParseResult r = parse_graph(R"({"edges": [["a", "b", 1], ["b", "c", 1], ["a", "c", 2]]})");
    CHECK(r.graph.vertex_count() == 3);
    DistanceMatrix dm = all_pairs_distances(r.graph);
    CHECK(dm(0, 2) == doctest::Approx(2.0));
}

TEST_CASE("long triangle edge at exactly the path length is accepted") {
    // d(a,c) = 2 = |ac|: tied, still metric.
    ParseResult r = parse_graph("a b 1\nb c 1\na c 2");
    CHECK(r.graph.edge_count() == 3);
}

TEST_CASE("shortcut edge raises MetricEdgeViolation naming the edge") {
    try {
        parse_graph("a b 1\nb c 1\na c 3");
        FAIL("expected MetricEdgeViolation");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::metric_edge_violation);
        CHECK(std::string(err.what()).find("a-c") != std::string::npos);
    }
}

TEST_CASE("shortcut edges demote to warnings on request") {
    ParseOptions options;
    options.metric_policy = ParseOptions::MetricPolicy::warn;
    ParseResult r = parse_graph("a b 1\nb c 1\na c 3", options);
    CHECK(r.graph.edge_count() == 3);
    REQUIRE(r.warnings.size() == 1);
}

TEST_CASE("structural validation errors") {
    CHECK_THROWS_AS(parse_graph("a a 1"), Error);              // self-loop
    CHECK_THROWS_AS(parse_graph("a b 0"), Error);              // non-positive
    CHECK_THROWS_AS(parse_graph("a b -2"), Error);             // negative
    CHECK_THROWS_AS(parse_graph("a b 1\nc d 1"), Error);       // disconnected
    CHECK_THROWS_AS(parse_graph("a b\n"), Error);              // malformed line
    CHECK_THROWS_AS(parse_graph("a b x\n"), Error);            // bad weight
    CHECK_THROWS_AS(parse_graph("   "), Error);                // empty
    CHECK_THROWS_AS(parse_graph(R"({"edges": "no"})"), Error); // bad json shape
}

TEST_CASE("parallel edges are allowed") {
    ParseResult r = parse_graph("a b 1\na b 1");
    CHECK(r.graph.edge_count() == 2);
}

TEST_CASE("labels are arbitrary non-whitespace strings, weights decimal reals") {
    ParseResult r = parse_graph("näin/42 β-node 1e-3\nβ-node x:7 2.5E2\n");
    CHECK(r.graph.vertex_count() == 3);
    CHECK(r.graph.label(0) == "näin/42");
    CHECK(r.graph.edge(0).length == doctest::Approx(0.001));
    CHECK(r.graph.edge(1).length == doctest::Approx(250.0));
    WeightedGraph round = parse_graph(serialize_graph(r.graph)).graph;
    CHECK(round.label(2) == "x:7");
}

TEST_CASE("round trip through serialize_graph reproduces the graph") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        WeightedGraph g = generate(GraphKind::random_connected, 5 + static_cast<int>(seed % 6),
                                   WeightSpec::random(0.25, 3.0), seed);
        WeightedGraph h = parse_graph(serialize_graph(g)).graph;
        REQUIRE(h.vertex_count() == g.vertex_count());
        REQUIRE(h.edge_count() == g.edge_count());
        for (int e = 0; e < g.edge_count(); ++e) {
            CHECK(g.label(g.edge(e).u) == h.label(h.edge(e).u));
            CHECK(g.label(g.edge(e).v) == h.label(h.edge(e).v));
            CHECK(g.edge(e).length == h.edge(e).length);  // bit-exact
        }
    }
}

TEST_CASE("generators honor their shapes") {
    WeightedGraph p = generate(GraphKind::path, 4, WeightSpec::explicit_list({2, 1, 1}), 0);
    CHECK(p.edge_count() == 3);
    CHECK(p.total_length() == doctest::Approx(4.0));

    WeightedGraph k3 = generate(GraphKind::complete, 3, WeightSpec::uniform(1), 0);
    CHECK(k3.edge_count() == 3);

    WeightedGraph t = generate(GraphKind::random_tree, 50, WeightSpec::random(0.5, 2.0), 7);
    CHECK(t.vertex_count() == 50);
    CHECK(t.edge_count() == 49);
}

TEST_CASE("generation is deterministic for a fixed seed") {
    WeightedGraph a = generate(GraphKind::random_connected, 9, WeightSpec::random(0.5, 2.0), 42);
    WeightedGraph b = generate(GraphKind::random_connected, 9, WeightSpec::random(0.5, 2.0), 42);
    CHECK(serialize_graph(a) == serialize_graph(b));
}

TEST_CASE("generator parameter validation") {
    CHECK_THROWS_AS(generate(GraphKind::path, 1, WeightSpec::uniform(1), 0), Error);
    CHECK_THROWS_AS(generate(GraphKind::cycle, 2, WeightSpec::uniform(1), 0), Error);
    CHECK_THROWS_AS(generate(GraphKind::path, 4, WeightSpec::uniform(0), 0), Error);
    CHECK_THROWS_AS(generate(GraphKind::path, 4, WeightSpec::random(0, 1), 0), Error);
}

TEST_CASE("every generated instance passes full validation") {
    const GraphKind kinds[] = {GraphKind::path,        GraphKind::cycle,
                               GraphKind::star,        GraphKind::complete,
                               GraphKind::random_tree, GraphKind::random_cactus,
                               GraphKind::random_connected};
    const Tolerance& tol = default_tolerance();
    for (GraphKind kind : kinds) {
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            int n = 3 + static_cast<int>(seed % 8);
            WeightedGraph g = generate(kind, n, WeightSpec::random(0.5, 2.0), seed);
            CHECK(g.vertex_count() == n);
            DistanceMatrix dm = all_pairs_distances(g, 1);
            CHECK(validate_metric_edges(g, dm, tol).empty());
        }
    }
}

TEST_CASE("metric violation fires iff a detour is shorter, vs removed-edge brute force") {
    // Draw weights without the metric fix-up, then compare the validator with
    // the distance matrix of the graph minus the edge under test.
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        int n = 4 + static_cast<int>(seed % 5);
        WeightedGraph base = generate(GraphKind::random_connected, n,
                                      WeightSpec::uniform(1.0), seed);
        std::vector<Edge> edges = base.edges();
        Rng rng(seed * 31 + 1);
        for (Edge& e : edges) e.length = rng.uniform(0.5, 3.0);
        WeightedGraph g = WeightedGraph::from_edges(n, edges);
        DistanceMatrix dm = all_pairs_distances(g, 1);
        auto messages = validate_metric_edges(g, dm);

        std::vector<bool> flagged(edges.size(), false);
        for (const std::string& msg : messages) {
            auto pos = msg.find("index ");
            REQUIRE(pos != std::string::npos);
            flagged[static_cast<std::size_t>(std::stoi(msg.substr(pos + 6)))] = true;
        }
        for (std::size_t i = 0; i < edges.size(); ++i) {
            std::vector<Edge> rest = edges;
            rest.erase(rest.begin() + static_cast<long>(i));
            // Removing a bridge may disconnect; treat that as "no detour".
            double detour = 1e300;
            try {
                WeightedGraph h = WeightedGraph::from_edges(n, rest);
                auto d = contmean::testing::floyd_warshall(h);
                detour = d[static_cast<std::size_t>(edges[i].u)]
                          [static_cast<std::size_t>(edges[i].v)];
            } catch (const Error&) {
            }
            bool expect = detour < edges[i].length &&
                          !default_tolerance().near(detour, edges[i].length);
            CHECK(flagged[i] == expect);
        }
    }
}

TEST_CASE("edge refs orient the lambda parametrization") {
    Edge e{3, 7, 2.0};
    EdgeRef forward{0, false};
    EdgeRef backward{0, true};
    CHECK(forward.first(e) == 3);
    CHECK(forward.second(e) == 7);
    CHECK(backward.first(e) == 7);
    CHECK(backward.second(e) == 3);
}

TEST_CASE("total_length examples") {
    CHECK(total_length(contmean::testing::path_211()) == doctest::Approx(4.0));
    CHECK(total_length(contmean::testing::unit_triangle()) == doctest::Approx(3.0));
    WeightedGraph k4 = generate(GraphKind::complete, 4, WeightSpec::uniform(2), 0);
    CHECK(total_length(k4) == doctest::Approx(12.0));
}
