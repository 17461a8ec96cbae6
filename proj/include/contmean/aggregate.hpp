#ifndef CONTMEAN_AGGREGATE_HPP
#define CONTMEAN_AGGREGATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "contmean/shortest_paths.hpp"

namespace contmean {

enum class PairBackend { spt, roof };

struct MeanOptions {
    PairBackend backend = PairBackend::spt;
    int threads = 0;  // 0 = hardware concurrency
    bool per_pair_table = false;
    Tolerance tol;
};

struct PairContribution {
    int e;
    int f;
    double mean;
};

struct MeanDistanceResult {
    double value = 0;
    std::string backend;
    int n = 0;
    int m = 0;
    double total_length = 0;
    std::vector<PairContribution> pair_table;  // filled only on request
};

// Whole-graph continuous mean distance: the length-weighted sum of all
// ordered edge-pair means plus the |e|/3 diagonal terms, divided by the
// squared total length. Deterministic for any thread count (fixed-chunk
// compensated reduction).
MeanDistanceResult continuous_mean(const WeightedGraph& g, const DistanceMatrix& dm,
                                   const MeanOptions& options = {});
MeanDistanceResult continuous_mean(const WeightedGraph& g, const MeanOptions& options = {});

// Mean of all n^2 ordered vertex distances (zero diagonal included); 0 for a
// single vertex.
double discrete_mean(const WeightedGraph& g, const DistanceMatrix& dm);
double discrete_mean(const WeightedGraph& g);

// Sum of distances over unordered vertex pairs.
double wiener_index(const WeightedGraph& g, const DistanceMatrix& dm);
double wiener_index(const WeightedGraph& g);

// Length-weighted average of vertex_edge_mean over an edge subset (empty
// subset argument = all edges). Throws EmptyEdgeSet when there is nothing to
// average over.
double vertex_graph_mean(const WeightedGraph& g, const DistanceMatrix& dm, int v,
                         std::span<const int> edge_subset = {},
                         const Tolerance& tol = default_tolerance());

// Every length multiplied by beta > 0; means scale by beta (Remark-style
// homogeneity, exercised by tests rather than recomputed here).
WeightedGraph scale_graph(const WeightedGraph& g, double beta);

}  // namespace contmean

#endif
