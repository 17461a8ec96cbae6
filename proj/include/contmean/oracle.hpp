#ifndef CONTMEAN_ORACLE_HPP
#define CONTMEAN_ORACLE_HPP

#include "contmean/shortest_paths.hpp"

namespace contmean {

struct OracleConfig {
    int grid = 512;  // samples per axis, >= 2
    int threads = 0;
};

// Midpoint-rule average of d(p,q) over an N x N grid on the edge pair. The
// integrand is rebuilt from the distance matrix alone (min of the four
// endpoint-route planes; |x - y| on a single edge), independent of both exact
// backends.
double oracle_pair_mean(const WeightedGraph& g, const DistanceMatrix& dm, int e, int f,
                        const OracleConfig& cfg = {});

// Whole-graph mean assembled from oracle_pair_mean values.
double oracle_graph_mean(const WeightedGraph& g, const DistanceMatrix& dm,
                         const OracleConfig& cfg = {});

}  // namespace contmean

#endif
