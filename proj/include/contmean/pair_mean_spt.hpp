#ifndef CONTMEAN_PAIR_MEAN_SPT_HPP
#define CONTMEAN_PAIR_MEAN_SPT_HPP

#include "contmean/shortest_paths.hpp"

namespace contmean {

// Mean distance from vertex v to the points of edge e: either
// min(d(v,a), d(v,b)) + |e|/2 when e can be a tree edge from v, or the
// two-segment average around the break point otherwise.
double vertex_edge_mean(const WeightedGraph& g, const DistanceMatrix& dm, int v, int e,
                        const Tolerance& tol = default_tolerance());

enum class PairCaseKind { same_edge, linear, cycle };

// Resolved configuration of a pair of distinct edges. The linear case funnels
// every shortest path through one endpoint of one edge; the cycle case splits
// both edges at break points, leaving up to four linear pieces around an
// inner rectangular block.
struct EdgePairCase {
    PairCaseKind kind = PairCaseKind::cycle;

    // Linear case: mean = |funnel|/2 + vertex_edge_mean(via_vertex, far_edge).
    int funnel_edge = -1;
    int via_vertex = -1;
    int far_edge = -1;

    // Cycle case. span_edge carries the two break points, root_edge the two
    // mirror points; fractions follow each edge's stored u -> v orientation.
    int span_edge = -1;
    int root_edge = -1;
    double break_point_a = 0;  // break point of span edge w.r.t. root a
    double break_point_b = 0;
    double mirror_a = 0;  // mirror of break a on the root edge
    double mirror_b = 0;
    bool coincident_breaks = false;  // reduces to two linear pieces

    // Inner rectangular block: connecting path length and side length; the
    // block contributes theta + 2 * rect_side / 3.
    double theta = 0;
    double rect_side = 0;
};

// Classifies a pair of distinct edges as linear or cycle. SameEdge is never
// produced here; parallel edges are distinct pairs and classify as cycle.
EdgePairCase classify_pair(const WeightedGraph& g, const DistanceMatrix& dm, int e, int f,
                           const Tolerance& tol = default_tolerance());

// Exact continuous mean distance between the points of e and of f (e == f
// included), by the case analysis above. Symmetric in its arguments.
double pair_mean(const WeightedGraph& g, const DistanceMatrix& dm, int e, int f,
                 const Tolerance& tol = default_tolerance());

// Value attached to an already-classified pair.
double pair_mean_from_case(const WeightedGraph& g, const DistanceMatrix& dm,
                           const EdgePairCase& c, const Tolerance& tol = default_tolerance());

}  // namespace contmean

#endif
