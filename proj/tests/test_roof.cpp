#include <doctest.h>

#include <cmath>

#include "contmean/pair_mean_roof.hpp"
#include "contmean/rng.hpp"
#include "test_util.hpp"

using namespace contmean;
using namespace contmean::testing;

namespace {

double plane_value(const RoofPlane& p, double x, double y) {
    return p.coef_x * x + p.coef_y * y + p.offset;
}

}  // namespace

TEST_CASE("incident complete-graph edges keep two planes and integrate to 23/24") {
    WeightedGraph tri = unit_complete(3);
    DistanceMatrix dm = all_pairs_distances(tri);
    RoofDiagram roof = build_roof(tri, dm, 0, 1);  // edges 0-1 and 1-2 share vertex 1
    CHECK(roof.planes.size() == 2);
    CHECK(roof_mean(roof) == doctest::Approx(23.0 / 24));
}

TEST_CASE("single funnel corner dominates everywhere") {
    // Two unit edges joined through one endpoint pair by a path of length 1:
    // one plane covers the whole rectangle and the mean is theta + 1.
    WeightedGraph chain = parse_graph("a b 1\nb c 1\nc d 1").graph;
    DistanceMatrix dm = all_pairs_distances(chain);
    RoofDiagram roof = build_roof(chain, dm, 0, 2);
    REQUIRE(roof.regions.size() == 1);
    const RoofPlane& p = roof.planes[static_cast<std::size_t>(roof.regions[0].plane)];
    CHECK(p.corner_weight == doctest::Approx(1.0));
    CHECK(roof_mean(roof) == doctest::Approx(2.0));
}

TEST_CASE("opposite 4-cycle edges reduce to the crossing pair of planes") {
    WeightedGraph c4 = unit_cycle(4);
    DistanceMatrix dm = all_pairs_distances(c4);
    RoofDiagram roof = build_roof(c4, dm, 0, 2);
    CHECK(roof.planes.size() == 2);
    // Corner weights come straight from the matrix: the two surviving
    // corners are the adjacent endpoint pairs at distance 1.
    for (const RoofPlane& p : roof.planes) CHECK(p.corner_weight == doctest::Approx(1.0));
    CHECK(roof_mean(roof) == doctest::Approx(5.0 / 3));
}

TEST_CASE("non-incident complete-graph edges integrate to 3/2") {
    WeightedGraph k4 = unit_complete(4);
    DistanceMatrix dm = all_pairs_distances(k4);
    int e01 = 0;
    int e23 = -1;
    for (int e = 0; e < k4.edge_count(); ++e) {
        if (k4.edge(e).u == 2 && k4.edge(e).v == 3) e23 = e;
    }
    REQUIRE(e23 >= 0);
    RoofDiagram roof = build_roof(k4, dm, e01, e23);
    CHECK(roof.planes.size() == 4);
    CHECK(roof_mean(roof) == doctest::Approx(1.5));
}

TEST_CASE("regions tile the rectangle and sit on the lower envelope") {
    Rng rng(99);
    for (const WeightedGraph& g : small_corpus()) {
        DistanceMatrix dm = all_pairs_distances(g);
        for (int e = 0; e < g.edge_count(); ++e) {
            for (int f = e + 1; f < g.edge_count(); ++f) {
                RoofDiagram roof = build_roof(g, dm, e, f);
                double area = 0;
                for (const RoofRegion& r : roof.regions) area += r.area;
                REQUIRE(close_rel(area, roof.len_x * roof.len_y, 1e-9));

                // Bisectors in physical coordinates are axis-parallel or at
                // 45 degrees, so every polygon edge is too.
                for (const RoofRegion& r : roof.regions) {
                    for (std::size_t i = 0; i < r.polygon.size(); ++i) {
                        const RoofPoint& a = r.polygon[i];
                        const RoofPoint& b = r.polygon[(i + 1) % r.polygon.size()];
                        double dx = std::fabs(b.x - a.x);
                        double dy = std::fabs(b.y - a.y);
                        CHECK((dx < 1e-9 || dy < 1e-9 || std::fabs(dx - dy) < 1e-9));
                    }
                }

                for (const RoofRegion& r : roof.regions) {
                    const RoofPlane& assigned = roof.planes[static_cast<std::size_t>(r.plane)];
                    // Random points inside the region via convex combinations
                    // of its corners.
                    for (int trial = 0; trial < 100; ++trial) {
                        double wsum = 0, px = 0, py = 0;
                        for (const RoofPoint& corner : r.polygon) {
                            double w = rng.next_double() + 1e-3;
                            wsum += w;
                            px += w * corner.x;
                            py += w * corner.y;
                        }
                        px /= wsum;
                        py /= wsum;
                        double mine = plane_value(assigned, px, py);
                        for (const RoofPlane& other : roof.planes) {
                            CHECK(mine <= plane_value(other, px, py) +
                                              1e-9 * (1.0 + std::fabs(mine)));
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("centroid integration matches the truncated-prism rule") {
    for (const WeightedGraph& g : small_corpus()) {
        DistanceMatrix dm = all_pairs_distances(g);
        for (int e = 0; e < g.edge_count(); ++e) {
            for (int f = e + 1; f < g.edge_count(); ++f) {
                RoofDiagram roof = build_roof(g, dm, e, f);
                REQUIRE(close_rel(roof_mean(roof), roof_mean_prism(roof), 1e-12, 1e-12));
            }
        }
    }
}

TEST_CASE("same_edge_mean") {
    CHECK(same_edge_mean(1.0) == doctest::Approx(1.0 / 3));
    CHECK(same_edge_mean(3.0) == doctest::Approx(1.0));
    CHECK(same_edge_mean(0.5) == doctest::Approx(1.0 / 6));
    CHECK_THROWS_AS(same_edge_mean(0.0), Error);
    CHECK_THROWS_AS(same_edge_mean(-1.0), Error);
}
