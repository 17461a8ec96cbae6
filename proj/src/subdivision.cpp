#include "contmean/subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "contmean/aggregate.hpp"
#include "contmean/reduction.hpp"
#include "contmean/rng.hpp"

namespace contmean {

std::pair<double, double> pair_bounds(const WeightedGraph& g, const DistanceMatrix& dm, int e,
                                      int f) {
    if (e == f) raise(ErrorKind::invalid_parameter, "pair_bounds needs distinct edges");
    double d = edge_edge_distance(g, dm, e, f);
    double len_sum = g.edge(e).length + g.edge(f).length;
    return {d + len_sum / 4.0, d + len_sum / 2.0};
}

LineGraphBounds line_graph_bounds(const WeightedGraph& g, const Tolerance& tol, int threads) {
    if (!g.is_uniform(tol)) {
        raise(ErrorKind::not_uniform, "line-graph bounds need an alpha-uniform graph");
    }
    int m = g.edge_count();
    if (m < 1) raise(ErrorKind::empty_edge_set, "graph has no edges");
    double alpha = g.edge(0).length;

    // Vertices of the line graph are the edges of g; adjacency = shared
    // endpoint (one line edge even when two endpoints are shared).
    std::set<std::pair<int, int>> line_pairs;
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto inc = g.incident(v);
        for (std::size_t i = 0; i < inc.size(); ++i) {
            for (std::size_t j = i + 1; j < inc.size(); ++j) {
                int a = std::min(inc[i].edge, inc[j].edge);
                int b = std::max(inc[i].edge, inc[j].edge);
                if (a != b) line_pairs.insert({a, b});
            }
        }
    }
    std::vector<Edge> line_edges;
    line_edges.reserve(line_pairs.size());
    for (auto [a, b] : line_pairs) line_edges.push_back({a, b, alpha});

    LineGraphBounds out;
    out.line_vertices = m;
    out.line_edges = static_cast<int>(line_edges.size());
    if (m == 1) {
        out.edge_wiener = 0;
        out.line_discrete_mean = 0;
    } else {
        WeightedGraph line = WeightedGraph::from_edges(m, std::move(line_edges));
        DistanceMatrix dm = all_pairs_distances(line, threads);
        out.edge_wiener = wiener_index(line, dm);
        out.line_discrete_mean = 2.0 * out.edge_wiener / (static_cast<double>(m) * m);
    }
    out.upper = out.line_discrete_mean + alpha / (3.0 * m);
    out.lower = out.upper - (m - 1) * alpha / (2.0 * m);
    return out;
}

WeightedGraph subdivide_tree_arbitrary(const WeightedGraph& tree, int k, PlacementRule rule,
                                       std::uint64_t seed) {
    if (tree.edge_count() != tree.vertex_count() - 1) {
        raise(ErrorKind::not_a_tree, "subdivide_tree_arbitrary needs a tree");
    }
    if (k < 1) raise(ErrorKind::invalid_parameter, "k must be >= 1");

    Rng rng(seed ^ 0xda3e39cb94b95bdbULL);
    int next_vertex = tree.vertex_count();
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(tree.edge_count()) * (k + 1));

    for (const Edge& e : tree.edges()) {
        std::vector<double> fractions(static_cast<std::size_t>(k));
        if (rule == PlacementRule::even) {
            for (int i = 0; i < k; ++i) {
                fractions[static_cast<std::size_t>(i)] = static_cast<double>(i + 1) / (k + 1);
            }
        } else {
            const double min_gap = 1e-9;
            for (int attempt = 0;; ++attempt) {
                for (int i = 0; i < k; ++i) {
                    fractions[static_cast<std::size_t>(i)] = rng.next_double();
                }
                std::sort(fractions.begin(), fractions.end());
                double gap = fractions.front();
                for (int i = 0; i + 1 < k; ++i) {
                    gap = std::min(gap, fractions[static_cast<std::size_t>(i + 1)] -
                                            fractions[static_cast<std::size_t>(i)]);
                }
                gap = std::min(gap, 1.0 - fractions.back());
                if (gap >= min_gap) break;
                if (attempt > 1000) {
                    raise(ErrorKind::invalid_parameter, "could not place subdivision points");
                }
            }
        }
        int prev = e.u;
        double prev_frac = 0;
        for (int i = 0; i < k; ++i) {
            double frac = fractions[static_cast<std::size_t>(i)];
            edges.push_back({prev, next_vertex, (frac - prev_frac) * e.length});
            prev = next_vertex++;
            prev_frac = frac;
        }
        edges.push_back({prev, e.v, (1.0 - prev_frac) * e.length});
    }
    return WeightedGraph::from_edges(next_vertex, std::move(edges));
}

TreeBoundReport tree_subdivision_bound_check(const WeightedGraph& tree, int k,
                                             PlacementRule rule, std::uint64_t seed,
                                             int threads) {
    WeightedGraph subdivided = subdivide_tree_arbitrary(tree, k, rule, seed);
    TreeBoundReport report;
    report.mu_original = discrete_mean(tree, all_pairs_distances(tree, threads));
    report.mu_subdivided = discrete_mean(subdivided, all_pairs_distances(subdivided, threads));
    double n = tree.vertex_count();
    report.bound = n / (n - 2.0 * k / (k + 1.0)) * report.mu_original;
    report.margin = report.bound - report.mu_subdivided;
    report.holds = report.mu_subdivided < report.bound;
    return report;
}

std::size_t SubdividedGraph::count_role(VertexRole r) const {
    std::size_t count = 0;
    for (VertexRole role : roles) {
        if (role == r) ++count;
    }
    return count;
}

SubdividedGraph canonical_subdivision(const WeightedGraph& g, int k, std::size_t vertex_cap) {
    if (k < 1) raise(ErrorKind::invalid_parameter, "subdivision depth must be >= 1");
    double pieces = std::ldexp(1.0, k);  // 2^k
    double projected = g.vertex_count() + g.edge_count() * (pieces - 1.0);
    if (k > 40 || projected > static_cast<double>(vertex_cap)) {
        raise(ErrorKind::cap_exceeded,
              "k-th subdivision would have about " + std::to_string(projected) +
                  " vertices (cap " + std::to_string(vertex_cap) + ")");
    }

    int per_edge = (1 << k) - 1;  // interior vertices per base edge
    int half = 1 << (k - 1);      // segments per half edge

    SubdividedGraph out;
    out.k = k;
    int total = g.vertex_count() + g.edge_count() * per_edge;
    out.roles.assign(static_cast<std::size_t>(total), VertexRole::black);
    out.edge_paths.reserve(static_cast<std::size_t>(g.edge_count()));

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(g.edge_count()) * (per_edge + 1));
    int next_vertex = g.vertex_count();
    for (const Edge& e : g.edges()) {
        double piece_len = e.length / pieces;
        std::vector<int> path;
        path.reserve(static_cast<std::size_t>(per_edge) + 2);
        path.push_back(e.u);
        for (int i = 0; i < per_edge; ++i) {
            out.roles[static_cast<std::size_t>(next_vertex)] =
                (i + 1 == half) ? VertexRole::blue : VertexRole::red;
            path.push_back(next_vertex++);
        }
        path.push_back(e.v);
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            edges.push_back({path[i], path[i + 1], piece_len});
        }
        out.edge_paths.push_back(std::move(path));
    }
    out.result = WeightedGraph::from_edges(total, std::move(edges));
    return out;
}

namespace {

struct FirstSubdivisionSums {
    double wiener_v1;      // all pairs of G^1 vertices
    double wiener_blue;    // midpoint pairs
    double wiener_blue_v;  // midpoint x original pairs
    double blue_mu_d;      // 2 wiener_blue / m^2
};

FirstSubdivisionSums first_subdivision_sums(const WeightedGraph& g, int threads) {
    SubdividedGraph g1 = canonical_subdivision(g, 1);
    DistanceMatrix dm = all_pairs_distances(g1.result, threads);
    int total = g1.result.vertex_count();

    CompensatedSum v1, blue, blue_v;
    for (int u = 0; u < total; ++u) {
        for (int v = u + 1; v < total; ++v) {
            double d = dm(u, v);
            v1.add(d);
            bool ub = g1.roles[static_cast<std::size_t>(u)] == VertexRole::blue;
            bool vb = g1.roles[static_cast<std::size_t>(v)] == VertexRole::blue;
            if (ub && vb) blue.add(d);
            if (ub != vb) blue_v.add(d);
        }
    }
    FirstSubdivisionSums sums;
    sums.wiener_v1 = v1.value();
    sums.wiener_blue = blue.value();
    sums.wiener_blue_v = blue_v.value();
    double m = g.edge_count();
    sums.blue_mu_d = 2.0 * sums.wiener_blue / (m * m);
    return sums;
}

}  // namespace

SandwichBounds omega_sandwich(const WeightedGraph& g, int k, bool materialize,
                              std::size_t vertex_cap, int threads) {
    int n = g.vertex_count();
    int m = g.edge_count();
    if (m < 2) raise(ErrorKind::invalid_parameter, "omega_sandwich needs m >= 2");
    if (k < 2) raise(ErrorKind::invalid_parameter, "omega_sandwich needs k >= 2");

    FirstSubdivisionSums sums = first_subdivision_sums(g, threads);

    double pk = std::ldexp(1.0, k);  // 2^k
    double total_len = g.total_length();
    SandwichBounds out;
    out.rho = g.max_edge_length();
    out.wiener_v1 = sums.wiener_v1;
    out.wiener_blue = sums.wiener_blue;
    out.wiener_blue_v = sums.wiener_blue_v;
    out.omega = sums.wiener_v1 + (pk - 2.0) * (pk * sums.wiener_blue + sums.wiener_blue_v) +
                total_len * (pk * pk / 6.0 - pk / 2.0 + 1.0 / 3.0);

    double vertices_k = n + m * (pk - 1.0);
    double denom = vertices_k * vertices_k;
    out.upper = 2.0 * out.omega / denom;
    // Slack from bounding every mixed-role distance below by the blue-blue
    // distance minus the in-edge offsets (triangle inequality): red-red pairs
    // lose up to (2^k - 2) offset sums per edge pair, red-blue pairs one per
    // ordered pair, red-black pairs one per (edge, outside vertex).
    double pair_count = static_cast<double>(m) * (m - 1) / 2.0;
    double slack = out.rho * (pk / 4.0 - 0.5) *
                   (2.0 * pair_count * (pk - 1.0) + static_cast<double>(m) * (n - 2));
    out.lower = 2.0 * (out.omega - slack) / denom;

    if (materialize) {
        SubdividedGraph gk = canonical_subdivision(g, k, vertex_cap);
        out.mu_d_actual = discrete_mean(gk.result, all_pairs_distances(gk.result, threads));
    }
    return out;
}

SubdivisionLimits subdivision_limits(const WeightedGraph& g, int threads) {
    int n = g.vertex_count();
    int m = g.edge_count();
    if (m < 2) raise(ErrorKind::invalid_parameter, "subdivision_limits needs m >= 2");

    FirstSubdivisionSums sums = first_subdivision_sums(g, threads);
    SubdivisionLimits out;
    out.blue_discrete_mean = sums.blue_mu_d;
    out.upper_limit = sums.blue_mu_d + g.total_length() / (3.0 * m * m);
    if (m == n - 1 && n >= 3) {
        out.tree_exact = sums.blue_mu_d + g.total_length() / (3.0 * (n - 1.0) * (n - 1.0));
    }
    if (g.is_uniform()) {
        out.uniform_upper = sums.blue_mu_d + g.edge(0).length / (3.0 * m);
    }
    return out;
}

}  // namespace contmean
