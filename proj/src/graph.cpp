#include "contmean/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "contmean/rng.hpp"
#include "contmean/shortest_paths.hpp"

namespace contmean {

namespace {

void check_structure(int n, const std::vector<Edge>& edges) {
    if (n < 1) raise(ErrorKind::validation_error, "graph needs at least one vertex");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
            raise(ErrorKind::validation_error,
                  "edge " + std::to_string(i) + " references a vertex out of range");
        }
        if (e.u == e.v) {
            raise(ErrorKind::validation_error,
                  "self-loop at vertex " + std::to_string(e.u) + " (edge " + std::to_string(i) +
                      ")");
        }
        if (!(e.length > 0) || !std::isfinite(e.length)) {
            raise(ErrorKind::validation_error,
                  "edge " + std::to_string(i) + " has non-positive length");
        }
    }
}

void check_connected(int n, const std::vector<Edge>& edges) {
    if (n == 1) return;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const Edge& e : edges) {
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    if (reached != n) raise(ErrorKind::validation_error, "graph is not connected");
}

std::string format_weight(double w) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", w);
    return buf;
}

}  // namespace

WeightedGraph WeightedGraph::from_edges(int vertex_count, std::vector<Edge> edges,
                                        std::vector<std::string> labels) {
    check_structure(vertex_count, edges);
    check_connected(vertex_count, edges);

    WeightedGraph g;
    g.n_ = vertex_count;
    g.edges_ = std::move(edges);
    if (labels.empty()) {
        labels.reserve(static_cast<std::size_t>(vertex_count));
        for (int v = 0; v < vertex_count; ++v) labels.push_back(std::to_string(v));
    } else if (static_cast<int>(labels.size()) != vertex_count) {
        raise(ErrorKind::validation_error, "label count does not match vertex count");
    }
    g.labels_ = std::move(labels);

    g.adj_offset_.assign(static_cast<std::size_t>(vertex_count) + 1, 0);
    for (const Edge& e : g.edges_) {
        ++g.adj_offset_[static_cast<std::size_t>(e.u) + 1];
        ++g.adj_offset_[static_cast<std::size_t>(e.v) + 1];
    }
    for (std::size_t v = 0; v < static_cast<std::size_t>(vertex_count); ++v) {
        g.adj_offset_[v + 1] += g.adj_offset_[v];
    }
    g.adjacency_.resize(g.adj_offset_.back());
    std::vector<std::size_t> cursor(g.adj_offset_.begin(), g.adj_offset_.end() - 1);
    for (int i = 0; i < static_cast<int>(g.edges_.size()); ++i) {
        const Edge& e = g.edges_[static_cast<std::size_t>(i)];
        g.adjacency_[cursor[static_cast<std::size_t>(e.u)]++] = {e.v, i};
        g.adjacency_[cursor[static_cast<std::size_t>(e.v)]++] = {e.u, i};
    }

    g.total_length_ = 0;
    g.max_edge_length_ = 0;
    for (const Edge& e : g.edges_) {
        g.total_length_ += e.length;
        g.max_edge_length_ = std::max(g.max_edge_length_, e.length);
    }
    return g;
}

bool WeightedGraph::is_uniform(const Tolerance& tol) const {
    if (edges_.empty()) return true;
    double a = edges_.front().length;
    for (const Edge& e : edges_) {
        if (!tol.near(e.length, a)) return false;
    }
    return true;
}

double total_length(const WeightedGraph& g) { return g.total_length(); }

namespace {

struct RawEdge {
    std::string u;
    std::string v;
    double w;
};

std::vector<RawEdge> parse_edge_list(std::string_view text) {
    std::vector<RawEdge> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::vector<std::string> tokens;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i > start) tokens.emplace_back(line.substr(start, i - start));
        }
        if (tokens.empty()) continue;
        if (tokens.size() != 3) {
            raise(ErrorKind::parse_error,
                  "line " + std::to_string(line_no) + ": expected '<u> <v> <w>'");
        }
        double w = 0;
        auto [ptr, ec] =
            std::from_chars(tokens[2].data(), tokens[2].data() + tokens[2].size(), w);
        if (ec != std::errc() || ptr != tokens[2].data() + tokens[2].size()) {
            raise(ErrorKind::parse_error,
                  "line " + std::to_string(line_no) + ": bad weight '" + tokens[2] + "'");
        }
        out.push_back({tokens[0], tokens[1], w});
    }
    return out;
}

std::vector<RawEdge> parse_json_edges(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        raise(ErrorKind::parse_error, std::string("invalid JSON: ") + ex.what());
    }
    if (!doc.is_object() || !doc.contains("edges") || !doc["edges"].is_array()) {
        raise(ErrorKind::parse_error, "JSON document must be an object with an \"edges\" array");
    }
    auto label_of = [](const nlohmann::json& j) -> std::string {
        if (j.is_string()) return j.get<std::string>();
        if (j.is_number_integer()) return std::to_string(j.get<long long>());
        if (j.is_number()) return format_weight(j.get<double>());
        raise(ErrorKind::parse_error, "vertex labels must be strings or numbers");
    };
    std::vector<RawEdge> out;
    for (const auto& item : doc["edges"]) {
        if (!item.is_array() || item.size() != 3 || !item[2].is_number()) {
            raise(ErrorKind::parse_error, "each edge must be [u, v, w]");
        }
        out.push_back({label_of(item[0]), label_of(item[1]), item[2].get<double>()});
    }
    return out;
}

}  // namespace

ParseResult parse_graph(std::string_view text, const ParseOptions& options) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        raise(ErrorKind::parse_error, "empty graph document");
    }
    std::vector<RawEdge> raw =
        text[first] == '{' ? parse_json_edges(text) : parse_edge_list(text);
    if (raw.empty()) raise(ErrorKind::parse_error, "no edges in input");

    std::map<std::string, int> index;
    std::vector<std::string> labels;
    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const RawEdge& r : raw) {
        auto id_of = [&](const std::string& s) {
            auto [it, inserted] = index.emplace(s, static_cast<int>(labels.size()));
            if (inserted) labels.push_back(s);
            return it->second;
        };
        int u = id_of(r.u);
        int v = id_of(r.v);
        edges.push_back({u, v, r.w});
    }

    int vertex_count = static_cast<int>(labels.size());
    ParseResult result{
        WeightedGraph::from_edges(vertex_count, std::move(edges), std::move(labels)), {}};

    DistanceMatrix dm = all_pairs_distances(result.graph, 1);
    std::vector<std::string> violations = validate_metric_edges(result.graph, dm, options.tol);
    if (!violations.empty()) {
        if (options.metric_policy == ParseOptions::MetricPolicy::error) {
            raise(ErrorKind::metric_edge_violation, violations.front());
        }
        result.warnings = std::move(violations);
    }
    return result;
}

std::string serialize_graph(const WeightedGraph& g) {
    std::string out;
    for (const Edge& e : g.edges()) {
        out += g.label(e.u);
        out += ' ';
        out += g.label(e.v);
        out += ' ';
        out += format_weight(e.length);
        out += '\n';
    }
    return out;
}

GraphKind graph_kind_from_name(std::string_view name) {
    if (name == "path") return GraphKind::path;
    if (name == "cycle") return GraphKind::cycle;
    if (name == "star") return GraphKind::star;
    if (name == "complete") return GraphKind::complete;
    if (name == "random_tree") return GraphKind::random_tree;
    if (name == "random_cactus") return GraphKind::random_cactus;
    if (name == "random_connected") return GraphKind::random_connected;
    raise(ErrorKind::invalid_parameter, "unknown graph kind '" + std::string(name) + "'");
}

const char* graph_kind_name(GraphKind kind) {
    switch (kind) {
        case GraphKind::path: return "path";
        case GraphKind::cycle: return "cycle";
        case GraphKind::star: return "star";
        case GraphKind::complete: return "complete";
        case GraphKind::random_tree: return "random_tree";
        case GraphKind::random_cactus: return "random_cactus";
        case GraphKind::random_connected: return "random_connected";
    }
    return "?";
}

namespace {

double draw_weight(const WeightSpec& spec, Rng& rng, std::size_t edge_index) {
    switch (spec.mode) {
        case WeightSpec::Mode::uniform:
            if (!(spec.alpha > 0)) raise(ErrorKind::invalid_parameter, "alpha must be positive");
            return spec.alpha;
        case WeightSpec::Mode::random:
            if (!(spec.lo > 0) || spec.hi < spec.lo) {
                raise(ErrorKind::invalid_parameter, "weight range must satisfy 0 < lo <= hi");
            }
            return rng.uniform(spec.lo, spec.hi);
        case WeightSpec::Mode::explicit_list:
            if (edge_index >= spec.values.size()) {
                raise(ErrorKind::invalid_parameter, "explicit weight list is too short");
            }
            if (!(spec.values[edge_index] > 0)) {
                raise(ErrorKind::invalid_parameter, "explicit weights must be positive");
            }
            return spec.values[edge_index];
    }
    return 1.0;
}

// Re-draws (then clamps) any edge longer than the current shortest path
// between its endpoints, until the metric-edge assumption holds. Fixed
// weights (uniform / explicit) are never rewritten; a violation there is an
// error.
WeightedGraph enforce_metric(int n, std::vector<Edge> edges, const WeightSpec& spec, Rng& rng) {
    const Tolerance& tol = default_tolerance();
    if (spec.mode != WeightSpec::Mode::random) {
        WeightedGraph g = WeightedGraph::from_edges(n, std::move(edges));
        DistanceMatrix dm = all_pairs_distances(g, 1);
        auto violations = validate_metric_edges(g, dm, tol);
        if (!violations.empty()) {
            raise(ErrorKind::metric_edge_violation, violations.front());
        }
        return g;
    }
    double floor = spec.lo;
    for (int pass = 0; pass < 64; ++pass) {
        WeightedGraph g = WeightedGraph::from_edges(n, edges);
        DistanceMatrix dm = all_pairs_distances(g, 1);
        bool changed = false;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            Edge& e = edges[i];
            double d = dm(e.u, e.v);
            if (tol.strictly_less(d, e.length)) {
                // Resample below the current distance for a few passes, then
                // clamp exactly to guarantee termination.
                e.length = (pass < 8 && d > floor) ? rng.uniform(std::min(floor, d), d) : d;
                changed = true;
            }
        }
        if (!changed) return g;
    }
    raise(ErrorKind::invalid_parameter, "could not draw metric weights for this instance");
}

}  // namespace

WeightedGraph generate_connected(int n, int target_edges, const WeightSpec& spec,
                                 std::uint64_t seed) {
    if (n < 2) raise(ErrorKind::invalid_parameter, "random_connected needs n >= 2");
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) {
        int parent = static_cast<int>(rng.next_index(static_cast<std::uint64_t>(v)));
        edges.push_back({parent, v, draw_weight(spec, rng, edges.size())});
    }
    if (target_edges <= 0) target_edges = n - 1 + (n + 1) / 2;
    int extra = target_edges - (n - 1);
    for (int i = 0; i < extra; ++i) {
        int u = static_cast<int>(rng.next_index(static_cast<std::uint64_t>(n)));
        int v = static_cast<int>(rng.next_index(static_cast<std::uint64_t>(n)));
        if (u == v) {
            v = (v + 1) % n;
        }
        edges.push_back({u, v, draw_weight(spec, rng, edges.size())});
    }
    return enforce_metric(n, std::move(edges), spec, rng);
}

WeightedGraph generate(GraphKind kind, int n, const WeightSpec& spec, std::uint64_t seed) {
    if (n < 2) raise(ErrorKind::invalid_parameter, "generate needs n >= 2");
    if (kind == GraphKind::cycle && n < 3) {
        raise(ErrorKind::invalid_parameter, "cycle needs n >= 3");
    }
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<Edge> edges;

    switch (kind) {
        case GraphKind::path:
            for (int v = 0; v + 1 < n; ++v) {
                edges.push_back({v, v + 1, draw_weight(spec, rng, edges.size())});
            }
            return WeightedGraph::from_edges(n, std::move(edges));

        case GraphKind::cycle: {
            for (int v = 0; v < n; ++v) {
                edges.push_back({v, (v + 1) % n, draw_weight(spec, rng, edges.size())});
            }
            // A cycle is metric iff no edge exceeds the rest of the cycle.
            return enforce_metric(n, std::move(edges), spec, rng);
        }

        case GraphKind::star:
            for (int v = 1; v < n; ++v) {
                edges.push_back({0, v, draw_weight(spec, rng, edges.size())});
            }
            return WeightedGraph::from_edges(n, std::move(edges));

        case GraphKind::complete: {
            for (int u = 0; u < n; ++u) {
                for (int v = u + 1; v < n; ++v) {
                    edges.push_back({u, v, draw_weight(spec, rng, edges.size())});
                }
            }
            if (spec.mode == WeightSpec::Mode::uniform) {
                return WeightedGraph::from_edges(n, std::move(edges));
            }
            return enforce_metric(n, std::move(edges), spec, rng);
        }

        case GraphKind::random_tree:
            for (int v = 1; v < n; ++v) {
                int parent = static_cast<int>(rng.next_index(static_cast<std::uint64_t>(v)));
                edges.push_back({parent, v, draw_weight(spec, rng, edges.size())});
            }
            return WeightedGraph::from_edges(n, std::move(edges));

        case GraphKind::random_cactus: {
            // Grow blocks: attach either a pendant edge or a whole cycle at a
            // random existing vertex until n vertices exist.
            int used = 1;
            while (used < n) {
                int at = static_cast<int>(rng.next_index(static_cast<std::uint64_t>(used)));
                bool make_cycle = used + 2 <= n && rng.next_double() < 0.5;
                if (!make_cycle) {
                    edges.push_back({at, used, draw_weight(spec, rng, edges.size())});
                    ++used;
                } else {
                    int max_extra = std::min(n - used, 5);
                    int extra =
                        2 + static_cast<int>(rng.next_index(
                                static_cast<std::uint64_t>(std::max(1, max_extra - 1))));
                    extra = std::min(extra, max_extra);
                    int prev = at;
                    for (int i = 0; i < extra; ++i) {
                        edges.push_back({prev, used, draw_weight(spec, rng, edges.size())});
                        prev = used;
                        ++used;
                    }
                    edges.push_back({prev, at, draw_weight(spec, rng, edges.size())});
                }
            }
            return enforce_metric(n, std::move(edges), spec, rng);
        }

        case GraphKind::random_connected:
            return generate_connected(n, 0, spec, seed);
    }
    raise(ErrorKind::invalid_parameter, "unhandled graph kind");
}

}  // namespace contmean
