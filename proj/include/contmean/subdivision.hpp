#ifndef CONTMEAN_SUBDIVISION_HPP
#define CONTMEAN_SUBDIVISION_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "contmean/shortest_paths.hpp"

namespace contmean {

// d(e,f) + (|e|+|f|)/4 <= mu_c(e,f) <= d(e,f) + (|e|+|f|)/2 for distinct
// edges; both ends are attainable.
std::pair<double, double> pair_bounds(const WeightedGraph& g, const DistanceMatrix& dm, int e,
                                      int f);

// Sandwich for alpha-uniform graphs via the discrete mean of the alpha-
// uniform line graph.
struct LineGraphBounds {
    double lower = 0;
    double upper = 0;
    double line_discrete_mean = 0;
    double edge_wiener = 0;  // Wiener index of the line graph
    int line_vertices = 0;
    int line_edges = 0;
};
LineGraphBounds line_graph_bounds(const WeightedGraph& g,
                                  const Tolerance& tol = default_tolerance(), int threads = 0);

enum class PlacementRule { even, random };

// Inserts k interior vertices on every edge of a tree. Random placement draws
// i.i.d. uniform positions per edge (sorted, re-drawn until no two points or
// endpoints come closer than 1e-9 |e|); even placement splits uniformly.
WeightedGraph subdivide_tree_arbitrary(const WeightedGraph& tree, int k, PlacementRule rule,
                                       std::uint64_t seed = 0);

// Checks mu_d(T^(k)) < n / (n - 2k/(k+1)) * mu_d(T) by materializing the
// subdivided tree.
struct TreeBoundReport {
    double mu_subdivided = 0;
    double mu_original = 0;
    double bound = 0;
    double margin = 0;  // bound - mu_subdivided, positive when the bound holds
    bool holds = false;
};
TreeBoundReport tree_subdivision_bound_check(const WeightedGraph& tree, int k, PlacementRule rule,
                                             std::uint64_t seed = 0, int threads = 0);

enum class VertexRole : unsigned char { black, blue, red };

// Canonical k-th subdivision: a midpoint (blue) on every edge, then each half
// split into 2^(k-1) equal parts (red). Vertices 0..n-1 stay black.
struct SubdividedGraph {
    WeightedGraph result;
    int k = 1;
    std::vector<VertexRole> roles;
    // Per base edge: the full vertex path from edge.u to edge.v (2^k + 1 ids).
    std::vector<std::vector<int>> edge_paths;

    std::size_t count_role(VertexRole r) const;
};

SubdividedGraph canonical_subdivision(const WeightedGraph& g, int k,
                                      std::size_t vertex_cap = std::size_t{1} << 20);

// Closed-form sandwich on mu_d(G^k) built from the first subdivision only
// (no G^k materialization needed): omega is the Wiener-index upper bound,
// attained exactly by trees.
struct SandwichBounds {
    double omega = 0;
    double lower = 0;
    double upper = 0;
    double rho = 0;  // longest edge of G
    std::optional<double> mu_d_actual;
    // Ingredients, exposed for reports and tests.
    double wiener_v1 = 0;       // W over all vertices of G^1
    double wiener_blue = 0;     // W over midpoints
    double wiener_blue_v = 0;   // midpoints x original vertices
};
SandwichBounds omega_sandwich(const WeightedGraph& g, int k, bool materialize = false,
                              std::size_t vertex_cap = std::size_t{1} << 20, int threads = 0);

// Limits of mu_d(G^k) as k grows: the general upper bound
// mu_d(blue) + |E|/(3 m^2), the exact tree limit, and the alpha-uniform
// refinement mu_d(blue) + alpha/(3m) when applicable.
struct SubdivisionLimits {
    double blue_discrete_mean = 0;
    double upper_limit = 0;
    std::optional<double> tree_exact;
    std::optional<double> uniform_upper;
};
SubdivisionLimits subdivision_limits(const WeightedGraph& g, int threads = 0);

}  // namespace contmean

#endif
