#include "contmean/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "contmean/reduction.hpp"

namespace contmean {

namespace {

// Row-parallel midpoint sum of min over the route planes. The integrand is
// assembled from corner distances only; no backend code is involved.
double grid_average(int n_grid, int threads, double len_x, double len_y, double w_uu,
                    double w_vu, double w_uv, double w_vv, bool same_edge) {
    std::size_t rows = static_cast<std::size_t>(n_grid);
    double hx = len_x / n_grid;
    double hy = len_y / n_grid;
    double total = deterministic_chunked_sum(
        rows, 8, threads, [&](std::size_t begin, std::size_t end) {
            CompensatedSum sum;
            for (std::size_t i = begin; i < end; ++i) {
                double x = (static_cast<double>(i) + 0.5) * hx;
                for (int j = 0; j < n_grid; ++j) {
                    double y = (static_cast<double>(j) + 0.5) * hy;
                    double d;
                    if (same_edge) {
                        d = std::fabs(x - y);
                    } else {
                        d = std::min(std::min(x + y + w_uu, (len_x - x) + y + w_vu),
                                     std::min(x + (len_y - y) + w_uv,
                                              (len_x - x) + (len_y - y) + w_vv));
                    }
                    sum.add(d);
                }
            }
            return sum.value();
        });
    return total / (static_cast<double>(n_grid) * n_grid);
}

}  // namespace

double oracle_pair_mean(const WeightedGraph& g, const DistanceMatrix& dm, int e, int f,
                        const OracleConfig& cfg) {
    if (cfg.grid < 2) raise(ErrorKind::invalid_parameter, "oracle grid must be >= 2");
    const Edge& ex = g.edge(e);
    const Edge& ey = g.edge(f);
    if (e == f) {
        return grid_average(cfg.grid, cfg.threads, ex.length, ex.length, 0, 0, 0, 0, true);
    }
    return grid_average(cfg.grid, cfg.threads, ex.length, ey.length, dm(ex.u, ey.u),
                        dm(ex.v, ey.u), dm(ex.u, ey.v), dm(ex.v, ey.v), false);
}

double oracle_graph_mean(const WeightedGraph& g, const DistanceMatrix& dm,
                         const OracleConfig& cfg) {
    int m = g.edge_count();
    if (m < 1) raise(ErrorKind::empty_edge_set, "continuous mean needs at least one edge");
    CompensatedSum sum;
    for (int e = 0; e < m; ++e) {
        for (int f = e; f < m; ++f) {
            double value = oracle_pair_mean(g, dm, e, f, cfg);
            double weight = g.edge(e).length * g.edge(f).length;
            sum.add((e == f ? 1.0 : 2.0) * value * weight);
        }
    }
    double total = g.total_length();
    return sum.value() / (total * total);
}

}  // namespace contmean
