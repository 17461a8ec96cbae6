#ifndef CONTMEAN_GRAPH_HPP
#define CONTMEAN_GRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "contmean/errors.hpp"
#include "contmean/tolerance.hpp"

namespace contmean {

// Undirected weighted edge. Parallel edges are allowed; self-loops are not.
struct Edge {
    int u;
    int v;
    double length;

    int other(int w) const { return w == u ? v : u; }
};

// Reference to an edge together with a parametrization direction: the point
// at fraction lambda sits at lambda * second + (1 - lambda) * first, where
// "first" is endpoint u unless reversed.
struct EdgeRef {
    int index = 0;
    bool reversed = false;

    int first(const Edge& e) const { return reversed ? e.v : e.u; }
    int second(const Edge& e) const { return reversed ? e.u : e.v; }
};

struct IncidentEdge {
    int neighbor;
    int edge;
};

// Connected weighted multigraph, immutable after construction. Vertex ids are
// dense 0..n-1; original input labels are kept for reports.
class WeightedGraph {
public:
    // Empty placeholder; every usable instance comes from from_edges.
    WeightedGraph() = default;

    // Validates structure: vertex ids in range, no self-loops, positive
    // lengths, connected. Does NOT check the metric-edge assumption (that
    // needs a distance matrix; see parse_graph / validate_metric_edges).
    static WeightedGraph from_edges(int vertex_count, std::vector<Edge> edges,
                                    std::vector<std::string> labels = {});

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const Edge& edge(int i) const { return edges_[static_cast<std::size_t>(i)]; }
    const std::vector<Edge>& edges() const { return edges_; }

    std::span<const IncidentEdge> incident(int v) const {
        return {adjacency_.data() + adj_offset_[static_cast<std::size_t>(v)],
                adjacency_.data() + adj_offset_[static_cast<std::size_t>(v) + 1]};
    }
    int degree(int v) const {
        return static_cast<int>(adj_offset_[static_cast<std::size_t>(v) + 1] -
                                adj_offset_[static_cast<std::size_t>(v)]);
    }

    const std::string& label(int v) const { return labels_[static_cast<std::size_t>(v)]; }
    const std::vector<std::string>& labels() const { return labels_; }

    double total_length() const { return total_length_; }
    double max_edge_length() const { return max_edge_length_; }

    // All edge lengths equal within tolerance.
    bool is_uniform(const Tolerance& tol = default_tolerance()) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
    std::vector<IncidentEdge> adjacency_;
    std::vector<std::size_t> adj_offset_;
    double total_length_ = 0;
    double max_edge_length_ = 0;
};

// Sum of all edge lengths.
double total_length(const WeightedGraph& g);

struct ParseOptions {
    // What to do with an edge strictly longer than some alternative path.
    enum class MetricPolicy { error, warn };
    MetricPolicy metric_policy = MetricPolicy::error;
    Tolerance tol;
};

struct ParseResult {
    WeightedGraph graph;
    // Non-empty only under MetricPolicy::warn; one message per shortcut edge.
    std::vector<std::string> warnings;
};

// Parses either the edge-list format (lines "<u> <v> <w>", '#' comments) or a
// JSON document {"edges": [[u, v, w], ...]}. Labels are arbitrary strings,
// re-indexed densely in order of first appearance.
ParseResult parse_graph(std::string_view text, const ParseOptions& options = {});

// Edge-list serialization with round-trip-exact weights.
std::string serialize_graph(const WeightedGraph& g);

enum class GraphKind {
    path,
    cycle,
    star,
    complete,
    random_tree,
    random_cactus,
    random_connected,
};

GraphKind graph_kind_from_name(std::string_view name);
const char* graph_kind_name(GraphKind kind);

struct WeightSpec {
    enum class Mode { uniform, random, explicit_list };
    Mode mode = Mode::uniform;
    double alpha = 1.0;
    double lo = 0.5;
    double hi = 2.0;
    std::vector<double> values;

    static WeightSpec uniform(double alpha) {
        WeightSpec s;
        s.mode = Mode::uniform;
        s.alpha = alpha;
        return s;
    }
    static WeightSpec random(double lo, double hi) {
        WeightSpec s;
        s.mode = Mode::random;
        s.lo = lo;
        s.hi = hi;
        return s;
    }
    static WeightSpec explicit_list(std::vector<double> values) {
        WeightSpec s;
        s.mode = Mode::explicit_list;
        s.values = std::move(values);
        return s;
    }
};

// Deterministic instance factory. Random weights are re-drawn (or clamped)
// until the metric-edge assumption holds, so every output is fully valid.
WeightedGraph generate(GraphKind kind, int n, const WeightSpec& weights, std::uint64_t seed);

// Extra knob for random_connected: approximate edge count (>= n-1). Zero
// picks a default of ~1.5 n.
WeightedGraph generate_connected(int n, int target_edges, const WeightSpec& weights,
                                 std::uint64_t seed);

}  // namespace contmean

#endif
