#include "contmean/aggregate.hpp"

#include <algorithm>
#include <cmath>

#include "contmean/pair_mean_roof.hpp"
#include "contmean/pair_mean_spt.hpp"
#include "contmean/reduction.hpp"

namespace contmean {

namespace {

double pair_value(const WeightedGraph& g, const DistanceMatrix& dm, int e, int f,
                  const MeanOptions& options) {
    if (options.backend == PairBackend::roof) {
        return roof_mean(build_roof(g, dm, e, f));
    }
    return pair_mean(g, dm, e, f, options.tol);
}

// Unordered pair index -> (e, f) with e < f; pairs are laid out row by row.
std::pair<int, int> decode_pair(std::size_t idx, int m) {
    // Row e starts at offset e*m - e(e+1)/2.
    std::size_t lo = 0, hi = static_cast<std::size_t>(m) - 1;
    auto offset = [m](std::size_t e) {
        return e * static_cast<std::size_t>(m) - e * (e + 1) / 2;
    };
    while (lo < hi) {
        std::size_t mid = (lo + hi + 1) / 2;
        if (offset(mid) <= idx) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    int e = static_cast<int>(lo);
    int f = e + 1 + static_cast<int>(idx - offset(lo));
    return {e, f};
}

}  // namespace

MeanDistanceResult continuous_mean(const WeightedGraph& g, const DistanceMatrix& dm,
                                   const MeanOptions& options) {
    int m = g.edge_count();
    if (m < 1) raise(ErrorKind::empty_edge_set, "continuous mean needs at least one edge");

    std::size_t pair_count = static_cast<std::size_t>(m) * (m - 1) / 2;
    constexpr std::size_t kChunk = 2048;

    double off_diagonal = deterministic_chunked_sum(
        pair_count, kChunk, options.threads, [&](std::size_t begin, std::size_t end) {
            CompensatedSum sum;
            auto [e, f] = decode_pair(begin, m);
            for (std::size_t idx = begin; idx < end; ++idx) {
                double value = pair_value(g, dm, e, f, options);
                sum.add(2.0 * value * g.edge(e).length * g.edge(f).length);
                if (++f >= m) {
                    ++e;
                    f = e + 1;
                }
            }
            return sum.value();
        });

    CompensatedSum total;
    total.add(off_diagonal);
    for (int e = 0; e < m; ++e) {
        double len = g.edge(e).length;
        total.add(len * len * len / 3.0);
    }

    MeanDistanceResult result;
    result.n = g.vertex_count();
    result.m = m;
    result.total_length = g.total_length();
    result.backend = options.backend == PairBackend::roof ? "roof" : "spt";
    result.value = total.value() / (result.total_length * result.total_length);

    if (options.per_pair_table) {
        result.pair_table.reserve(pair_count + static_cast<std::size_t>(m));
        for (int e = 0; e < m; ++e) {
            for (int f = e; f < m; ++f) {
                double value = e == f ? g.edge(e).length / 3.0 : pair_value(g, dm, e, f, options);
                result.pair_table.push_back({e, f, value});
            }
        }
    }
    return result;
}

MeanDistanceResult continuous_mean(const WeightedGraph& g, const MeanOptions& options) {
    DistanceMatrix dm = all_pairs_distances(g, options.threads);
    return continuous_mean(g, dm, options);
}

double wiener_index(const WeightedGraph& g, const DistanceMatrix& dm) {
    int n = g.vertex_count();
    CompensatedSum sum;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) sum.add(dm(u, v));
    }
    return sum.value();
}

double wiener_index(const WeightedGraph& g) {
    return wiener_index(g, all_pairs_distances(g));
}

double discrete_mean(const WeightedGraph& g, const DistanceMatrix& dm) {
    int n = g.vertex_count();
    if (n <= 1) return 0.0;
    return 2.0 * wiener_index(g, dm) / (static_cast<double>(n) * n);
}

double discrete_mean(const WeightedGraph& g) {
    if (g.vertex_count() <= 1) return 0.0;
    return discrete_mean(g, all_pairs_distances(g));
}

double vertex_graph_mean(const WeightedGraph& g, const DistanceMatrix& dm, int v,
                         std::span<const int> edge_subset, const Tolerance& tol) {
    if (v < 0 || v >= g.vertex_count()) {
        raise(ErrorKind::invalid_parameter, "vertex out of range");
    }
    CompensatedSum weighted;
    double subset_length = 0;
    auto accumulate = [&](int e) {
        double len = g.edge(e).length;
        weighted.add(vertex_edge_mean(g, dm, v, e, tol) * len);
        subset_length += len;
    };
    if (edge_subset.empty()) {
        for (int e = 0; e < g.edge_count(); ++e) accumulate(e);
    } else {
        for (int e : edge_subset) accumulate(e);
    }
    if (subset_length <= 0) {
        raise(ErrorKind::empty_edge_set, "vertex_graph_mean needs a non-empty edge set");
    }
    return weighted.value() / subset_length;
}

WeightedGraph scale_graph(const WeightedGraph& g, double beta) {
    if (!(beta > 0) || !std::isfinite(beta)) {
        raise(ErrorKind::invalid_parameter, "scale factor must be positive");
    }
    std::vector<Edge> edges = g.edges();
    for (Edge& e : edges) e.length *= beta;
    return WeightedGraph::from_edges(g.vertex_count(), std::move(edges), g.labels());
}

}  // namespace contmean
