#include "contmean/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "contmean/reduction.hpp"

namespace contmean {

SubtreeSummary merge_at_cut_vertex(const SubtreeSummary& a, const SubtreeSummary& b) {
    if (a.length <= 0) return b;
    if (b.length <= 0) return a;
    double total = a.length + b.length;
    double wa = a.length / total;
    double wb = b.length / total;
    SubtreeSummary out;
    out.length = total;
    out.mean = wa * wa * a.mean + wb * wb * b.mean + 2.0 * wa * wb * (a.root_mean + b.root_mean);
    out.root_mean = wa * a.root_mean + wb * b.root_mean;
    return out;
}

SubtreeSummary extend_across_edge(const SubtreeSummary& child, double edge_length) {
    SubtreeSummary edge_piece{edge_length, edge_length / 3.0, edge_length / 2.0};
    SubtreeSummary joined = merge_at_cut_vertex(child, edge_piece);
    // Re-root at the far end of the edge.
    joined.root_mean = (edge_length * (edge_length / 2.0) +
                        child.length * (edge_length + child.root_mean)) /
                       joined.length;
    return joined;
}

namespace {

void require_tree(const WeightedGraph& g) {
    if (g.edge_count() != g.vertex_count() - 1) {
        raise(ErrorKind::not_a_tree, "graph has cycles (m != n - 1)");
    }
}

// Children-first order of a rooted spanning traversal; the graph is a tree.
struct TreeOrder {
    std::vector<int> bfs;          // root first
    std::vector<int> parent;       // -1 at root
    std::vector<int> parent_edge;  // -1 at root
};

TreeOrder tree_order(const WeightedGraph& g, int root) {
    int n = g.vertex_count();
    TreeOrder order;
    order.parent.assign(static_cast<std::size_t>(n), -2);
    order.parent_edge.assign(static_cast<std::size_t>(n), -1);
    order.bfs.reserve(static_cast<std::size_t>(n));
    order.bfs.push_back(root);
    order.parent[static_cast<std::size_t>(root)] = -1;
    for (std::size_t head = 0; head < order.bfs.size(); ++head) {
        int v = order.bfs[head];
        for (const IncidentEdge& inc : g.incident(v)) {
            if (order.parent[static_cast<std::size_t>(inc.neighbor)] != -2) continue;
            order.parent[static_cast<std::size_t>(inc.neighbor)] = v;
            order.parent_edge[static_cast<std::size_t>(inc.neighbor)] = inc.edge;
            order.bfs.push_back(inc.neighbor);
        }
    }
    return order;
}

}  // namespace

double tree_mean(const WeightedGraph& g) {
    require_tree(g);
    if (g.edge_count() == 0) {
        raise(ErrorKind::empty_edge_set, "continuous mean needs at least one edge");
    }
    TreeOrder order = tree_order(g, 0);
    std::vector<SubtreeSummary> summary(static_cast<std::size_t>(g.vertex_count()));
    for (std::size_t i = order.bfs.size(); i-- > 1;) {
        int v = order.bfs[i];
        int p = order.parent[static_cast<std::size_t>(v)];
        double w = g.edge(order.parent_edge[static_cast<std::size_t>(v)]).length;
        SubtreeSummary lifted = extend_across_edge(summary[static_cast<std::size_t>(v)], w);
        summary[static_cast<std::size_t>(p)] =
            merge_at_cut_vertex(summary[static_cast<std::size_t>(p)], lifted);
    }
    return summary[0].mean;
}

BlockDecomposition block_decomposition(const WeightedGraph& g) {
    int n = g.vertex_count();
    int m = g.edge_count();
    BlockDecomposition out;
    out.is_cut_vertex.assign(static_cast<std::size_t>(n), 0);
    out.blocks_of_vertex.assign(static_cast<std::size_t>(n), {});

    std::vector<int> disc(static_cast<std::size_t>(n), -1);
    std::vector<int> low(static_cast<std::size_t>(n), 0);
    std::vector<std::size_t> iter(static_cast<std::size_t>(n), 0);
    std::vector<int> entry_edge(static_cast<std::size_t>(n), -1);
    std::vector<char> edge_seen(static_cast<std::size_t>(m), 0);
    std::vector<int> edge_stack;
    std::vector<int> dfs_stack;
    int timer = 0;
    int root_children = 0;

    auto emit_block = [&](int until_edge) {
        Block block;
        for (;;) {
            int e = edge_stack.back();
            edge_stack.pop_back();
            block.edges.push_back(e);
            if (e == until_edge) break;
        }
        out.blocks.push_back(std::move(block));
    };

    disc[0] = low[0] = timer++;
    dfs_stack.push_back(0);
    while (!dfs_stack.empty()) {
        int v = dfs_stack.back();
        auto incident = g.incident(v);
        if (iter[static_cast<std::size_t>(v)] < incident.size()) {
            const IncidentEdge& inc = incident[iter[static_cast<std::size_t>(v)]++];
            if (inc.edge == entry_edge[static_cast<std::size_t>(v)] ||
                edge_seen[static_cast<std::size_t>(inc.edge)]) {
                continue;
            }
            edge_seen[static_cast<std::size_t>(inc.edge)] = 1;
            edge_stack.push_back(inc.edge);
            int w = inc.neighbor;
            if (disc[static_cast<std::size_t>(w)] == -1) {
                disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
                entry_edge[static_cast<std::size_t>(w)] = inc.edge;
                dfs_stack.push_back(w);
                if (v == 0) ++root_children;
            } else {
                low[static_cast<std::size_t>(v)] =
                    std::min(low[static_cast<std::size_t>(v)], disc[static_cast<std::size_t>(w)]);
            }
        } else {
            dfs_stack.pop_back();
            if (dfs_stack.empty()) break;
            int parent = dfs_stack.back();
            low[static_cast<std::size_t>(parent)] =
                std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(v)]);
            if (low[static_cast<std::size_t>(v)] >= disc[static_cast<std::size_t>(parent)]) {
                if (parent != 0 || root_children > 1) {
                    out.is_cut_vertex[static_cast<std::size_t>(parent)] = 1;
                }
                emit_block(entry_edge[static_cast<std::size_t>(v)]);
            }
        }
    }

    // Root cut-vertex status for the single-child case was handled above;
    // with one child the root is not a cut vertex.
    if (root_children <= 1) out.is_cut_vertex[0] = 0;

    // Classify blocks and collect vertices.
    for (std::size_t b = 0; b < out.blocks.size(); ++b) {
        Block& block = out.blocks[b];
        std::vector<int> verts;
        block.length = 0;
        for (int e : block.edges) {
            block.length += g.edge(e).length;
            verts.push_back(g.edge(e).u);
            verts.push_back(g.edge(e).v);
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        block.vertices = verts;
        for (int v : verts) out.blocks_of_vertex[static_cast<std::size_t>(v)].push_back(
            static_cast<int>(b));

        if (block.edges.size() == 1) {
            block.kind = Block::Kind::bridge;
        } else if (block.edges.size() == block.vertices.size()) {
            block.kind = Block::Kind::cycle;
            // Rewrite vertices in cyclic order, aligned with edges.
            std::vector<std::vector<std::pair<int, int>>> local(block.vertices.size());
            auto local_id = [&](int v) {
                return static_cast<int>(std::lower_bound(block.vertices.begin(),
                                                         block.vertices.end(), v) -
                                        block.vertices.begin());
            };
            bool simple_cycle = true;
            for (int e : block.edges) {
                local[static_cast<std::size_t>(local_id(g.edge(e).u))].push_back(
                    {g.edge(e).v, e});
                local[static_cast<std::size_t>(local_id(g.edge(e).v))].push_back(
                    {g.edge(e).u, e});
            }
            for (const auto& inc : local) {
                if (inc.size() != 2) simple_cycle = false;
            }
            if (!simple_cycle) {
                block.kind = Block::Kind::other;
                out.is_cactus = false;
            } else {
                std::vector<int> ring_vertices;
                std::vector<int> ring_edges;
                int start = block.vertices.front();
                int at = start;
                int via_edge = -1;
                do {
                    ring_vertices.push_back(at);
                    const auto& inc = local[static_cast<std::size_t>(local_id(at))];
                    const auto& step = (inc[0].second != via_edge) ? inc[0] : inc[1];
                    ring_edges.push_back(step.second);
                    via_edge = step.second;
                    at = step.first;
                } while (at != start);
                block.vertices = std::move(ring_vertices);
                block.edges = std::move(ring_edges);
            }
        } else {
            block.kind = Block::Kind::other;
            out.is_cactus = false;
        }
    }
    return out;
}

namespace {

// Sum over attachment pairs of h_i * h_j * geodesic(theta_i, theta_j) on a
// cycle of length c, with positions sorted ascending. Two-pointer sweep over
// the antipode keeps it linear.
double weighted_pair_geodesics(const std::vector<double>& theta, const std::vector<double>& h,
                               double c) {
    std::size_t t = theta.size();
    if (t < 2) return 0.0;
    std::vector<double> pref_h(t + 1, 0.0);
    std::vector<double> pref_ht(t + 1, 0.0);
    for (std::size_t i = 0; i < t; ++i) {
        pref_h[i + 1] = pref_h[i] + h[i];
        pref_ht[i + 1] = pref_ht[i] + h[i] * theta[i];
    }
    double total = 0;
    std::size_t split = 0;
    for (std::size_t i = 0; i < t; ++i) {
        double antipode = theta[i] + 0.5 * c;
        if (split < i + 1) split = i + 1;
        while (split < t && theta[split] <= antipode) ++split;
        // j in (i, split): clockwise arc is the geodesic.
        double near_sum = (pref_ht[split] - pref_ht[i + 1]) -
                          theta[i] * (pref_h[split] - pref_h[i + 1]);
        // j in [split, t): wrap the other way.
        double far_sum = (c + theta[i]) * (pref_h[t] - pref_h[split]) -
                         (pref_ht[t] - pref_ht[split]);
        total += h[i] * (near_sum + far_sum);
    }
    return total;
}

}  // namespace

double cactus_mean(const WeightedGraph& g) {
    if (g.edge_count() == 0) {
        raise(ErrorKind::empty_edge_set, "continuous mean needs at least one edge");
    }
    if (g.edge_count() == g.vertex_count() - 1) return tree_mean(g);

    BlockDecomposition dec = block_decomposition(g);
    if (!dec.is_cactus) {
        raise(ErrorKind::not_a_cactus, "some block is neither an edge nor a simple cycle");
    }

    // Root the block-cut tree at block 0 and peel leaves first.
    std::size_t nblocks = dec.blocks.size();
    std::vector<int> attach(nblocks, -1);
    std::vector<int> order;
    order.reserve(nblocks);
    std::vector<char> seen(nblocks, 0);
    order.push_back(0);
    seen[0] = 1;
    attach[0] = dec.blocks[0].vertices.front();
    for (std::size_t head = 0; head < order.size(); ++head) {
        int b = order[head];
        for (int v : dec.blocks[static_cast<std::size_t>(b)].vertices) {
            for (int nb : dec.blocks_of_vertex[static_cast<std::size_t>(v)]) {
                if (!seen[static_cast<std::size_t>(nb)]) {
                    seen[static_cast<std::size_t>(nb)] = 1;
                    attach[static_cast<std::size_t>(nb)] = v;
                    order.push_back(nb);
                }
            }
        }
    }

    std::vector<SubtreeSummary> hang(static_cast<std::size_t>(g.vertex_count()));
    for (std::size_t i = order.size(); i-- > 0;) {
        int b = order[i];
        const Block& block = dec.blocks[static_cast<std::size_t>(b)];
        int r = attach[static_cast<std::size_t>(b)];
        SubtreeSummary absorbed;

        if (block.kind == Block::Kind::bridge) {
            const Edge& e = g.edge(block.edges.front());
            int far = e.other(r);
            absorbed = extend_across_edge(hang[static_cast<std::size_t>(far)], e.length);
        } else {
            // Rotate the ring so the attachment vertex comes first.
            std::size_t t = block.vertices.size();
            std::size_t r_pos = 0;
            while (block.vertices[r_pos] != r) ++r_pos;
            double c = block.length;

            std::vector<double> theta;
            std::vector<double> weight;
            std::vector<const SubtreeSummary*> part;
            double arc = 0;
            for (std::size_t step = 0; step < t; ++step) {
                std::size_t pos = (r_pos + step) % t;
                int v = block.vertices[pos];
                const SubtreeSummary& hv = hang[static_cast<std::size_t>(v)];
                if ((v != r && hv.length > 0)) {
                    theta.push_back(arc);
                    weight.push_back(hv.length);
                    part.push_back(&hv);
                }
                arc += g.edge(block.edges[pos]).length;
            }

            double hang_total = 0;
            double cross_cycle = 0;   // pairs (cycle point, hanging point)
            double within_hangs = 0;  // pairs inside one hanging component
            double root_sum = c * (c / 4.0);
            for (std::size_t idx = 0; idx < theta.size(); ++idx) {
                double hi = weight[idx];
                double rm = part[idx]->root_mean;
                double geo = std::min(theta[idx], c - theta[idx]);
                hang_total += hi;
                cross_cycle += c * hi * (c / 4.0 + rm);
                within_hangs += hi * hi * part[idx]->mean;
                root_sum += hi * (geo + rm);
            }
            // Pairs in two different hanging components: root means plus the
            // cycle geodesic between their attachment vertices.
            double cross_hangs = 0;
            for (std::size_t idx = 0; idx < theta.size(); ++idx) {
                cross_hangs += weight[idx] * part[idx]->root_mean * (hang_total - weight[idx]);
            }
            cross_hangs += weighted_pair_geodesics(theta, weight, c);

            absorbed.length = c + hang_total;
            double distance_sum =
                c * c * (c / 4.0) + 2.0 * cross_cycle + within_hangs + 2.0 * cross_hangs;
            absorbed.mean = distance_sum / (absorbed.length * absorbed.length);
            absorbed.root_mean = root_sum / absorbed.length;
        }
        hang[static_cast<std::size_t>(r)] =
            merge_at_cut_vertex(hang[static_cast<std::size_t>(r)], absorbed);
    }
    return hang[static_cast<std::size_t>(attach[0])].mean;
}

double complete_uniform_mean(int n, double alpha) {
    if (n < 2 || !(alpha > 0)) {
        raise(ErrorKind::invalid_parameter, "complete_uniform_mean needs n >= 2 and alpha > 0");
    }
    double nn = n;
    return alpha * (9.0 * nn * nn - 22.0 * nn + 12.0) / (6.0 * (nn * nn - nn));
}

const char* graph_class_name(GraphClass c) {
    switch (c) {
        case GraphClass::path: return "path";
        case GraphClass::cycle: return "cycle";
        case GraphClass::tree: return "tree";
        case GraphClass::cactus: return "cactus";
        case GraphClass::complete_uniform: return "complete_uniform";
        case GraphClass::general: return "general";
    }
    return "?";
}

GraphClass detect_class(const WeightedGraph& g, const Tolerance& tol) {
    int n = g.vertex_count();
    int m = g.edge_count();

    if (m == n - 1) {
        int max_degree = 0;
        for (int v = 0; v < n; ++v) max_degree = std::max(max_degree, g.degree(v));
        return max_degree <= 2 ? GraphClass::path : GraphClass::tree;
    }
    if (m == n) {
        bool all_two = true;
        for (int v = 0; v < n && all_two; ++v) all_two = g.degree(v) == 2;
        if (all_two) return GraphClass::cycle;
    }
    if (block_decomposition(g).is_cactus) return GraphClass::cactus;
    if (static_cast<long long>(m) * 2 == static_cast<long long>(n) * (n - 1) &&
        g.is_uniform(tol)) {
        std::unordered_set<long long> pairs;
        bool simple = true;
        for (const Edge& e : g.edges()) {
            long long key = static_cast<long long>(std::min(e.u, e.v)) * n + std::max(e.u, e.v);
            if (!pairs.insert(key).second) {
                simple = false;
                break;
            }
        }
        if (simple) return GraphClass::complete_uniform;
    }
    return GraphClass::general;
}

ClosedFormDispatch closed_form_mean(const WeightedGraph& g, const Tolerance& tol) {
    if (g.edge_count() == 0) {
        raise(ErrorKind::empty_edge_set, "continuous mean needs at least one edge");
    }
    ClosedFormDispatch out;
    out.detected = detect_class(g, tol);
    out.closed_form = true;
    switch (out.detected) {
        case GraphClass::path:
            out.value = g.total_length() / 3.0;
            return out;
        case GraphClass::cycle:
            out.value = g.total_length() / 4.0;
            return out;
        case GraphClass::tree:
            out.value = tree_mean(g);
            return out;
        case GraphClass::cactus:
            out.value = cactus_mean(g);
            return out;
        case GraphClass::complete_uniform:
            out.value = complete_uniform_mean(g.vertex_count(), g.edge(0).length);
            return out;
        case GraphClass::general:
            out.closed_form = false;
            out.value = 0;
            return out;
    }
    out.closed_form = false;
    out.value = 0;
    return out;
}

}  // namespace contmean
