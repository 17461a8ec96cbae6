#ifndef CONTMEAN_SHORTEST_PATHS_HPP
#define CONTMEAN_SHORTEST_PATHS_HPP

#include <vector>

#include "contmean/graph.hpp"
#include "contmean/tolerance.hpp"

namespace contmean {

// Symmetric all-pairs distance matrix with zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, 0.0) {}

    int size() const { return n_; }

    double operator()(int u, int v) const {
        return d_[static_cast<std::size_t>(u) * n_ + v];
    }
    double& at(int u, int v) { return d_[static_cast<std::size_t>(u) * n_ + v]; }

    std::span<const double> row(int u) const {
        return {d_.data() + static_cast<std::size_t>(u) * n_, static_cast<std::size_t>(n_)};
    }

private:
    int n_ = 0;
    std::vector<double> d_;
};

// Repeated Dijkstra with a binary heap, one source per row; rows are
// independent, so the per-source work parallelizes without affecting values.
// threads == 0 means hardware concurrency.
DistanceMatrix all_pairs_distances(const WeightedGraph& g, int threads = 0);

// Single-source distances (one Dijkstra run).
std::vector<double> single_source_distances(const WeightedGraph& g, int source);

// Shortest-path tree rooted at `root` plus, for every non-tree edge ab, the
// break point at fraction lambda from a: the unique point whose distance to
// the root is realized both through a and through b.
struct ContinuousSPT {
    int root = 0;
    std::vector<int> parent_vertex;  // -1 at the root
    std::vector<int> parent_edge;    // -1 at the root
    std::vector<char> in_tree;       // per edge: selected as a parent edge
    struct BreakPoint {
        int edge;
        double lambda;  // fraction from edge(e).u toward edge(e).v, in [0,1]
    };
    std::vector<BreakPoint> break_points;  // one per non-tree edge, edge order
};

ContinuousSPT continuous_spt(const WeightedGraph& g, const DistanceMatrix& dm, int root);

// Break point fraction for edge e seen from root v, clamped to [0,1]:
// (|ab| + d(v,b) - d(v,a)) / (2|ab|), measured from endpoint a = edge(e).u.
double break_point_fraction(const WeightedGraph& g, const DistanceMatrix& dm, int v, int e);

// Whether e = ab can be an edge of a shortest-path tree rooted at v, i.e.
// |d(v,b) - d(v,a)| equals |ab| within tolerance. Equivalently the break
// point sits at an endpoint.
bool edge_in_tree(const WeightedGraph& g, const DistanceMatrix& dm, int v, int e,
                  const Tolerance& tol = default_tolerance());

// Both u and v reach `through`'s opposite endpoint only via `through`:
// with e = ab and through = b, tests d(a,u) = |ab| + d(b,u) and likewise for
// v. Requires u, v distinct from a and b.
bool same_component_property(const WeightedGraph& g, const DistanceMatrix& dm, int u, int v,
                             int e, int through, const Tolerance& tol = default_tolerance());

// d(v, e) = min over the endpoints of e.
double vertex_edge_distance(const WeightedGraph& g, const DistanceMatrix& dm, int v, int e);

// d(e, f) = min over endpoint pairs; zero when e == f.
double edge_edge_distance(const WeightedGraph& g, const DistanceMatrix& dm, int e, int f);

// Messages for edges whose length exceeds the shortest-path distance between
// their endpoints; empty when the metric-edge assumption holds.
std::vector<std::string> validate_metric_edges(const WeightedGraph& g, const DistanceMatrix& dm,
                                               const Tolerance& tol = default_tolerance());

}  // namespace contmean

#endif
