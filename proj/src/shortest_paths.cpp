#include "contmean/shortest_paths.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <queue>
#include <thread>

#include "contmean/reduction.hpp"

namespace contmean {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void dijkstra_into(const WeightedGraph& g, int source, double* dist) {
    int n = g.vertex_count();
    std::fill(dist, dist + n, kInf);
    dist[source] = 0.0;

    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
    queue.emplace(0.0, source);
    while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (d > dist[v]) continue;
        for (const IncidentEdge& inc : g.incident(v)) {
            double nd = d + g.edge(inc.edge).length;
            if (nd < dist[inc.neighbor]) {
                dist[inc.neighbor] = nd;
                queue.emplace(nd, inc.neighbor);
            }
        }
    }
}

}  // namespace

std::vector<double> single_source_distances(const WeightedGraph& g, int source) {
    std::vector<double> dist(static_cast<std::size_t>(g.vertex_count()));
    dijkstra_into(g, source, dist.data());
    return dist;
}

DistanceMatrix all_pairs_distances(const WeightedGraph& g, int threads) {
    int n = g.vertex_count();
    DistanceMatrix dm(n);
    int workers = std::min(resolve_threads(threads), n);

    if (workers <= 1) {
        for (int s = 0; s < n; ++s) dijkstra_into(g, s, &dm.at(s, 0));
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    int s = next.fetch_add(1);
                    if (s >= n) break;
                    dijkstra_into(g, s, &dm.at(s, 0));
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    // Different sources can accumulate the same path in different orders and
    // disagree in the last ulp; pin the matrix to exact symmetry.
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            double d = std::min(dm(u, v), dm(v, u));
            dm.at(u, v) = d;
            dm.at(v, u) = d;
        }
    }
    return dm;
}

double break_point_fraction(const WeightedGraph& g, const DistanceMatrix& dm, int v, int e) {
    const Edge& ed = g.edge(e);
    double lambda = (ed.length + dm(v, ed.v) - dm(v, ed.u)) / (2.0 * ed.length);
    return std::clamp(lambda, 0.0, 1.0);
}

bool edge_in_tree(const WeightedGraph& g, const DistanceMatrix& dm, int v, int e,
                  const Tolerance& tol) {
    const Edge& ed = g.edge(e);
    return tol.near(std::fabs(dm(v, ed.v) - dm(v, ed.u)), ed.length);
}

bool same_component_property(const WeightedGraph& g, const DistanceMatrix& dm, int u, int v,
                             int e, int through, const Tolerance& tol) {
    const Edge& ed = g.edge(e);
    int far = ed.other(through);
    return tol.near(dm(far, u), ed.length + dm(through, u)) &&
           tol.near(dm(far, v), ed.length + dm(through, v));
}

double vertex_edge_distance(const WeightedGraph& g, const DistanceMatrix& dm, int v, int e) {
    const Edge& ed = g.edge(e);
    return std::min(dm(v, ed.u), dm(v, ed.v));
}

double edge_edge_distance(const WeightedGraph& g, const DistanceMatrix& dm, int e, int f) {
    if (e == f) return 0.0;
    const Edge& a = g.edge(e);
    const Edge& b = g.edge(f);
    return std::min(std::min(dm(a.u, b.u), dm(a.u, b.v)),
                    std::min(dm(a.v, b.u), dm(a.v, b.v)));
}

ContinuousSPT continuous_spt(const WeightedGraph& g, const DistanceMatrix& dm, int root) {
    int n = g.vertex_count();
    if (root < 0 || root >= n) raise(ErrorKind::invalid_parameter, "root out of range");

    ContinuousSPT t;
    t.root = root;
    t.parent_vertex.assign(static_cast<std::size_t>(n), -1);
    t.parent_edge.assign(static_cast<std::size_t>(n), -1);
    t.in_tree.assign(static_cast<std::size_t>(g.edge_count()), 0);

    // Distances are already exact; pick, per vertex, the lowest-index parent
    // among edges that realize them.
    for (int v = 0; v < n; ++v) {
        if (v == root) continue;
        int best_parent = -1;
        int best_edge = -1;
        for (const IncidentEdge& inc : g.incident(v)) {
            double via = dm(root, inc.neighbor) + g.edge(inc.edge).length;
            if (via != dm(root, v)) continue;
            if (best_parent == -1 || inc.neighbor < best_parent ||
                (inc.neighbor == best_parent && inc.edge < best_edge)) {
                best_parent = inc.neighbor;
                best_edge = inc.edge;
            }
        }
        if (best_parent == -1) {
            // Accumulated rounding can make d(root,u) + |uv| differ from
            // d(root,v) in the last ulp; fall back to the closest relaxation.
            double best_gap = kInf;
            for (const IncidentEdge& inc : g.incident(v)) {
                double gap =
                    std::fabs(dm(root, inc.neighbor) + g.edge(inc.edge).length - dm(root, v));
                if (gap < best_gap) {
                    best_gap = gap;
                    best_parent = inc.neighbor;
                    best_edge = inc.edge;
                }
            }
        }
        t.parent_vertex[static_cast<std::size_t>(v)] = best_parent;
        t.parent_edge[static_cast<std::size_t>(v)] = best_edge;
        t.in_tree[static_cast<std::size_t>(best_edge)] = 1;
    }

    for (int e = 0; e < g.edge_count(); ++e) {
        if (!t.in_tree[static_cast<std::size_t>(e)]) {
            t.break_points.push_back({e, break_point_fraction(g, dm, root, e)});
        }
    }
    return t;
}

std::vector<std::string> validate_metric_edges(const WeightedGraph& g, const DistanceMatrix& dm,
                                               const Tolerance& tol) {
    std::vector<std::string> messages;
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        double d = dm(ed.u, ed.v);
        if (tol.strictly_less(d, ed.length)) {
            messages.push_back("edge " + g.label(ed.u) + "-" + g.label(ed.v) + " (index " +
                               std::to_string(e) + ") has length " + std::to_string(ed.length) +
                               " but an alternative path of length " + std::to_string(d));
        }
    }
    return messages;
}

}  // namespace contmean
