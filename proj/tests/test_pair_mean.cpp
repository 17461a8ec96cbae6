#include <doctest.h>

#include <cmath>

#include "contmean/pair_mean_roof.hpp"
#include "contmean/pair_mean_spt.hpp"
#include "contmean/subdivision.hpp"
#include "test_util.hpp"

using namespace contmean;
using namespace contmean::testing;

namespace {

// 1-D midpoint quadrature of the distance profile along an edge, as an
// independent check on vertex_edge_mean. The profile is the min of the two
// endpoint routes.
double vertex_edge_quadrature(const WeightedGraph& g, const DistanceMatrix& dm, int v, int e,
                              int samples) {
    const Edge& ed = g.edge(e);
    double da = dm(v, ed.u);
    double db = dm(v, ed.v);
    double sum = 0;
    for (int i = 0; i < samples; ++i) {
        double x = (i + 0.5) * ed.length / samples;
        sum += std::min(da + x, db + ed.length - x);
    }
    return sum / samples;
}

int find_edge(const WeightedGraph& g, int u, int v) {
    for (int e = 0; e < g.edge_count(); ++e) {
        if ((g.edge(e).u == u && g.edge(e).v == v) || (g.edge(e).u == v && g.edge(e).v == u)) {
            return e;
        }
    }
    REQUIRE(false);
    return -1;
}

}  // namespace

TEST_CASE("vertex_edge_mean examples") {
    // Endpoint of a unit edge: 1/2.
    WeightedGraph single = parse_graph("a b 1").graph;
    DistanceMatrix dms = all_pairs_distances(single);
    CHECK(vertex_edge_mean(single, dms, 0, 0) == doctest::Approx(0.5));

    // Unit triangle, vertex vs opposite edge: integral of 1 + min(x, 1-x)
    // over [0,1] = 5/4.
    WeightedGraph tri = unit_triangle();
    DistanceMatrix dmt = all_pairs_distances(tri);
    CHECK(vertex_edge_mean(tri, dmt, 2, 0) == doctest::Approx(1.25));

    // Unit path a-b-c, v = a, e = bc: in-tree branch, 1 + 1/2.
    WeightedGraph path = parse_graph("a b 1\nb c 1").graph;
    DistanceMatrix dmp = all_pairs_distances(path);
    CHECK(vertex_edge_mean(path, dmp, 0, 1) == doctest::Approx(1.5));
}

TEST_CASE("vertex_edge_mean matches 1-D quadrature and stays in its band") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        WeightedGraph g = generate(GraphKind::random_connected, 4 + static_cast<int>(seed % 6),
                                   WeightSpec::random(0.5, 2.0), seed);
        DistanceMatrix dm = all_pairs_distances(g);
        int v = static_cast<int>(seed % static_cast<std::uint64_t>(g.vertex_count()));
        int e = static_cast<int>((seed * 7) % static_cast<std::uint64_t>(g.edge_count()));
        double got = vertex_edge_mean(g, dm, v, e);
        double ref = vertex_edge_quadrature(g, dm, v, e, 100000);
        REQUIRE(close_rel(got, ref, 1e-6));
        double dist = vertex_edge_distance(g, dm, v, e);
        CHECK(got >= dist - 1e-12);
        CHECK(got <= dist + g.edge(e).length + 1e-12);
    }
}

TEST_CASE("classification examples") {
    // First and third edges of a 3-edge unit path: linear via the middle.
    WeightedGraph p4 = parse_graph("a b 1\nb c 1\nc d 1").graph;
    DistanceMatrix dmp = all_pairs_distances(p4);
    EdgePairCase lin = classify_pair(p4, dmp, 0, 2);
    CHECK(lin.kind == PairCaseKind::linear);

    // Opposite edges of the uniform 4-cycle: cycle with break points at the
    // edge endpoints, reducing to one rectangular block.
    WeightedGraph c4 = unit_cycle(4);
    DistanceMatrix dm4 = all_pairs_distances(c4);
    int e01 = find_edge(c4, 0, 1);
    int e23 = find_edge(c4, 2, 3);
    EdgePairCase cyc = classify_pair(c4, dm4, e01, e23);
    CHECK(cyc.kind == PairCaseKind::cycle);
    CHECK_FALSE(cyc.coincident_breaks);
    CHECK(std::min(cyc.break_point_a, cyc.break_point_b) == doctest::Approx(0.0));
    CHECK(std::max(cyc.break_point_a, cyc.break_point_b) == doctest::Approx(1.0));
    CHECK(cyc.rect_side == doctest::Approx(1.0));
    CHECK(cyc.theta == doctest::Approx(1.0));

    // Incident edges of the unit triangle: cycle (no funnel endpoint).
    WeightedGraph tri = unit_triangle();
    DistanceMatrix dmt = all_pairs_distances(tri);
    EdgePairCase inc = classify_pair(tri, dmt, 0, 1);
    CHECK(inc.kind == PairCaseKind::cycle);
}

TEST_CASE("pair_mean frozen values") {
    // Same edge of length t: t/3.
    WeightedGraph single = parse_graph("a b 1").graph;
    DistanceMatrix dms = all_pairs_distances(single);
    CHECK(pair_mean(single, dms, 0, 0) == doctest::Approx(1.0 / 3));

    // Opposite edges of the uniform 4-cycle: theta + 2 lambda / 3 = 5/3.
    WeightedGraph c4 = unit_cycle(4);
    DistanceMatrix dm4 = all_pairs_distances(c4);
    CHECK(pair_mean(c4, dm4, find_edge(c4, 0, 1), find_edge(c4, 2, 3)) ==
          doctest::Approx(5.0 / 3));

    // Incident and non-incident edges of unit complete graphs.
    for (int n = 3; n <= 6; ++n) {
        WeightedGraph kn = unit_complete(n);
        DistanceMatrix dmk = all_pairs_distances(kn);
        int e01 = find_edge(kn, 0, 1);
        int e12 = find_edge(kn, 1, 2);
        CHECK(pair_mean(kn, dmk, e01, e12) == doctest::Approx(23.0 / 24));
        if (n >= 4) {
            int e23 = find_edge(kn, 2, 3);
            CHECK(pair_mean(kn, dmk, e01, e23) == doctest::Approx(1.5));
        }
    }

    // Two unit edges joined by a unique middle path: linear value 2.
    WeightedGraph chain = parse_graph("a b 1\nb c 1\nc d 1").graph;
    DistanceMatrix dmc = all_pairs_distances(chain);
    CHECK(pair_mean(chain, dmc, 0, 2) == doctest::Approx(2.0));

    // Parallel unit edges: mean of min(x+y, 2-x-y) over the unit square.
    WeightedGraph par = parallel_pair(1.0);
    DistanceMatrix dmpar = all_pairs_distances(par);
    CHECK(pair_mean(par, dmpar, 0, 1) == doctest::Approx(2.0 / 3));
}

TEST_CASE("pair_mean is symmetric and sandwiched by the distance bounds") {
    for (const WeightedGraph& g : small_corpus()) {
        DistanceMatrix dm = all_pairs_distances(g);
        for (int e = 0; e < g.edge_count(); ++e) {
            for (int f = e + 1; f < g.edge_count(); ++f) {
                double ef = pair_mean(g, dm, e, f);
                double fe = pair_mean(g, dm, f, e);
                CHECK(ef == fe);  // canonical ordering makes this exact
                auto [lower, upper] = pair_bounds(g, dm, e, f);
                CHECK(ef >= lower - 1e-9);
                CHECK(ef <= upper + 1e-9);
            }
        }
    }
}

TEST_CASE("cycle case internals are consistent") {
    for (const WeightedGraph& g : small_corpus()) {
        DistanceMatrix dm = all_pairs_distances(g);
        for (int e = 0; e < g.edge_count(); ++e) {
            for (int f = e + 1; f < g.edge_count(); ++f) {
                EdgePairCase c = classify_pair(g, dm, e, f);
                if (c.kind != PairCaseKind::cycle || c.coincident_breaks) continue;
                // Mirror separation equals break separation (both edges carry
                // a segment of the same physical length).
                double break_sep = std::fabs(c.break_point_b - c.break_point_a) *
                                   g.edge(c.span_edge).length;
                double mirror_sep = std::fabs(c.mirror_b - c.mirror_a) *
                                    g.edge(c.root_edge).length;
                CHECK(close_rel(break_sep, mirror_sep, 1e-9, 1e-9));
                CHECK(c.rect_side == doctest::Approx(break_sep));
                // Piece weights along each edge sum to 1.
                double span_weights = c.break_point_a + (1.0 - c.break_point_b) +
                                      (c.break_point_b - c.break_point_a);
                CHECK(span_weights == doctest::Approx(1.0));
                CHECK(c.theta >= -1e-12);
            }
        }
    }
}

TEST_CASE("spt and roof backends agree on every corpus pair") {
    for (const WeightedGraph& g : small_corpus()) {
        DistanceMatrix dm = all_pairs_distances(g);
        for (int e = 0; e < g.edge_count(); ++e) {
            for (int f = e + 1; f < g.edge_count(); ++f) {
                double spt = pair_mean(g, dm, e, f);
                double roof = roof_mean(build_roof(g, dm, e, f));
                REQUIRE(close_rel(spt, roof, 1e-9));
            }
        }
    }
}
