#include <doctest.h>

#include <cmath>

#include "contmean/shortest_paths.hpp"
#include "test_util.hpp"

using namespace contmean;
using namespace contmean::testing;

TEST_CASE("distance examples") {
    DistanceMatrix tri = all_pairs_distances(unit_triangle());
    CHECK(tri(0, 1) == doctest::Approx(1.0));
    CHECK(tri(0, 2) == doctest::Approx(1.0));

    DistanceMatrix path = all_pairs_distances(path_211());
    CHECK(path(0, 3) == doctest::Approx(4.0));

    DistanceMatrix t112 = all_pairs_distances(triangle_112());
    CHECK(t112(0, 2) == doctest::Approx(2.0));  // tied with the two-hop path
}

TEST_CASE("all_pairs_distances agrees with Floyd-Warshall on random graphs") {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        int n = 3 + static_cast<int>(seed % 8);
        WeightedGraph g = generate(GraphKind::random_connected, n,
                                   WeightSpec::random(0.5, 2.0), seed);
        DistanceMatrix dm = all_pairs_distances(g, 1);
        auto fw = floyd_warshall(g);
        for (int u = 0; u < g.vertex_count(); ++u) {
            for (int v = 0; v < g.vertex_count(); ++v) {
                REQUIRE(close_rel(dm(u, v), fw[static_cast<std::size_t>(u)]
                                              [static_cast<std::size_t>(v)], 1e-12));
            }
        }
    }
}

TEST_CASE("matrix invariants hold on the corpus") {
    for (const WeightedGraph& g : small_corpus()) {
        DistanceMatrix dm = all_pairs_distances(g);
        int n = g.vertex_count();
        for (int u = 0; u < n; ++u) {
            CHECK(dm(u, u) == 0.0);
            for (int v = 0; v < n; ++v) {
                CHECK(dm(u, v) == dm(v, u));
                for (int w = 0; w < n; ++w) {
                    CHECK(dm(u, w) <= dm(u, v) + dm(v, w) + 1e-9);
                }
            }
        }
        for (int e = 0; e < g.edge_count(); ++e) {
            CHECK(close_rel(dm(g.edge(e).u, g.edge(e).v), g.edge(e).length));
        }
    }
}

TEST_CASE("continuous SPT break point examples") {
    // Unit triangle rooted anywhere: the opposite edge breaks at its middle.
    WeightedGraph tri = unit_triangle();
    DistanceMatrix dm = all_pairs_distances(tri);
    ContinuousSPT t = continuous_spt(tri, dm, 2);
    REQUIRE(t.break_points.size() == 1);
    CHECK(t.break_points[0].edge == 0);  // edge 0-1
    CHECK(t.break_points[0].lambda == doctest::Approx(0.5));

    // 4-cycle rooted at 0: the single non-tree edge breaks at the antipodal
    // vertex 2 (equal two-hop routes both ways), and the tie-break keeps the
    // lower-index far edge in the tree.
    WeightedGraph c4 = unit_cycle(4);
    DistanceMatrix dm4 = all_pairs_distances(c4);
    ContinuousSPT t4 = continuous_spt(c4, dm4, 0);
    REQUIRE(t4.break_points.size() == 1);
    CHECK(c4.edge(t4.break_points[0].edge).u == 2);
    CHECK(c4.edge(t4.break_points[0].edge).v == 3);
    CHECK(t4.break_points[0].lambda == doctest::Approx(0.0));
    CHECK(t4.parent_vertex[2] == 1);

    // Triangle 1,1,2 rooted at the apex: the long edge gets lambda 1/2.
    WeightedGraph t112 = triangle_112();
    DistanceMatrix dm112 = all_pairs_distances(t112);
    ContinuousSPT apex = continuous_spt(t112, dm112, 1);
    REQUIRE(apex.break_points.size() == 1);
    CHECK(t112.edge(apex.break_points[0].edge).length == doctest::Approx(2.0));
    CHECK(apex.break_points[0].lambda == doctest::Approx(0.5));
    // Both witness paths to the break point have length 2.
    CHECK(dm112(1, 0) + 0.5 * 2.0 == doctest::Approx(2.0));
}

TEST_CASE("break point witness paths balance on random graphs") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        WeightedGraph g = generate(GraphKind::random_connected, 4 + static_cast<int>(seed % 7),
                                   WeightSpec::random(0.5, 2.0), seed);
        DistanceMatrix dm = all_pairs_distances(g);
        for (int root = 0; root < g.vertex_count(); ++root) {
            ContinuousSPT t = continuous_spt(g, dm, root);
            // Parent edges realize the root distances.
            for (int v = 0; v < g.vertex_count(); ++v) {
                if (v == t.root) continue;
                int p = t.parent_vertex[static_cast<std::size_t>(v)];
                double w = g.edge(t.parent_edge[static_cast<std::size_t>(v)]).length;
                REQUIRE(close_rel(dm(root, p) + w, dm(root, v)));
            }
            for (const auto& bp : t.break_points) {
                const Edge& e = g.edge(bp.edge);
                double through_a = dm(root, e.u) + bp.lambda * e.length;
                double through_b = dm(root, e.v) + (1.0 - bp.lambda) * e.length;
                REQUIRE(close_rel(through_a, through_b));
            }
        }
    }
}

TEST_CASE("edge_in_tree predicate") {
    WeightedGraph path = parse_graph("a b 1\nb c 1").graph;
    DistanceMatrix dm = all_pairs_distances(path);
    CHECK(edge_in_tree(path, dm, 0, 1));

    WeightedGraph tri = unit_triangle();
    DistanceMatrix dmt = all_pairs_distances(tri);
    CHECK_FALSE(edge_in_tree(tri, dmt, 2, 0));  // |1-1| = 0 < 1

    WeightedGraph t112 = triangle_112();
    DistanceMatrix dm112 = all_pairs_distances(t112);
    CHECK_FALSE(edge_in_tree(t112, dm112, 1, 2));  // apex vs the long edge
}

TEST_CASE("edge_in_tree is false iff the break point is strictly interior") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        WeightedGraph g = generate(GraphKind::random_connected, 4 + static_cast<int>(seed % 6),
                                   WeightSpec::random(0.5, 2.0), seed);
        DistanceMatrix dm = all_pairs_distances(g);
        for (int v = 0; v < g.vertex_count(); ++v) {
            for (int e = 0; e < g.edge_count(); ++e) {
                double lambda = break_point_fraction(g, dm, v, e);
                bool interior = lambda > 1e-9 && lambda < 1.0 - 1e-9;
                CHECK(edge_in_tree(g, dm, v, e) == !interior);
            }
        }
    }
}

TEST_CASE("same component property") {
    // w - a - b - u path plus a pendant at u: u sits behind b w.r.t. edge ab.
    WeightedGraph g = parse_graph("w a 1\na b 1\nb u 1\nu x 1").graph;
    DistanceMatrix dm = all_pairs_distances(g);
    int b = 2, u = 3, x = 4, w = 0;
    int ab = 1;  // edge index of a-b
    CHECK(same_component_property(g, dm, u, x, ab, b));
    CHECK_FALSE(same_component_property(g, dm, u, w, ab, b));

    // Unit triangle: no vertex funnels through an endpoint of the far edge.
    WeightedGraph tri = unit_triangle();
    DistanceMatrix dmt = all_pairs_distances(tri);
    CHECK_FALSE(same_component_property(tri, dmt, 2, 2, 0, 0));
    CHECK_FALSE(same_component_property(tri, dmt, 2, 2, 0, 1));

    // Uniform 4-cycle: opposite edge endpoints split their shortest paths.
    WeightedGraph c4 = unit_cycle(4);
    DistanceMatrix dm4 = all_pairs_distances(c4);
    CHECK_FALSE(same_component_property(c4, dm4, 0, 1, 2, 2));
    CHECK_FALSE(same_component_property(c4, dm4, 0, 1, 2, 3));
}

TEST_CASE("parallel runs produce identical matrices") {
    WeightedGraph g = generate(GraphKind::random_connected, 20, WeightSpec::random(0.5, 2.0), 3);
    DistanceMatrix a = all_pairs_distances(g, 1);
    DistanceMatrix b = all_pairs_distances(g, 4);
    for (int u = 0; u < g.vertex_count(); ++u) {
        for (int v = 0; v < g.vertex_count(); ++v) {
            CHECK(a(u, v) == b(u, v));
        }
    }
}
