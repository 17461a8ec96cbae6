#ifndef CONTMEAN_CLOSED_FORMS_HPP
#define CONTMEAN_CLOSED_FORMS_HPP

#include <vector>

#include "contmean/graph.hpp"

namespace contmean {

// Aggregate view of a processed component hanging at a vertex: total edge
// length, its continuous mean, and the mean distance from the attachment
// vertex to the component's points.
struct SubtreeSummary {
    double length = 0;
    double mean = 0;
    double root_mean = 0;
};

// Combines two components that meet only at their shared root vertex. An
// empty side (length 0) returns the other unchanged.
SubtreeSummary merge_at_cut_vertex(const SubtreeSummary& a, const SubtreeSummary& b);

// Extends a summary rooted at the child endpoint of an edge across that edge:
// the edge joins the component as a path piece, and the summary is re-rooted
// at the parent endpoint.
SubtreeSummary extend_across_edge(const SubtreeSummary& child, double edge_length);

// O(n) continuous mean distance of a weighted tree.
double tree_mean(const WeightedGraph& g);

// Blocks of the graph: bridges and (for cacti) simple cycles.
struct Block {
    enum class Kind { bridge, cycle, other };
    Kind kind = Kind::bridge;
    std::vector<int> edges;
    // For cycle blocks: vertices in cyclic order, aligned with `edges`
    // (edges[i] joins vertices[i] and vertices[(i+1) % size]).
    std::vector<int> vertices;
    double length = 0;
};

struct BlockDecomposition {
    std::vector<Block> blocks;
    std::vector<char> is_cut_vertex;
    std::vector<std::vector<int>> blocks_of_vertex;  // block ids touching each vertex
    bool is_cactus = true;  // every block a bridge or a simple cycle
};

BlockDecomposition block_decomposition(const WeightedGraph& g);

// O(n) continuous mean distance of a weighted cactus (every edge in at most
// one cycle), by peeling the block-cut tree.
double cactus_mean(const WeightedGraph& g);

// alpha (9n^2 - 22n + 12) / (6 (n^2 - n)) for the alpha-uniform complete
// graph on n >= 2 vertices.
double complete_uniform_mean(int n, double alpha);

enum class GraphClass { path, cycle, tree, cactus, complete_uniform, general };

const char* graph_class_name(GraphClass c);

// Most specific class, in the order path, cycle, tree, cactus,
// complete_uniform, general. Costs O(n + m).
GraphClass detect_class(const WeightedGraph& g, const Tolerance& tol = default_tolerance());

// Fastest applicable engine: closed form when the class has one, otherwise
// the generic backend. Returns the value plus the class it dispatched on.
struct ClosedFormDispatch {
    GraphClass detected;
    bool closed_form;  // false = caller should run a generic backend
    double value;      // meaningful only when closed_form
};
ClosedFormDispatch closed_form_mean(const WeightedGraph& g,
                                    const Tolerance& tol = default_tolerance());

}  // namespace contmean

#endif
