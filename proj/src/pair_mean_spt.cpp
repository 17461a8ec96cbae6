#include "contmean/pair_mean_spt.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace contmean {

double vertex_edge_mean(const WeightedGraph& g, const DistanceMatrix& dm, int v, int e,
                        const Tolerance& tol) {
    const Edge& ed = g.edge(e);
    double da = dm(v, ed.u);
    double db = dm(v, ed.v);
    double w = ed.length;
    if (edge_in_tree(g, dm, v, e, tol)) {
        return std::min(da, db) + 0.5 * w;
    }
    // Distance profile along the edge rises from both endpoints and peaks at
    // the break point; average the two slabs.
    double seg_a = std::clamp(0.5 * (w + db - da), 0.0, w);
    double seg_b = w - seg_a;
    double lambda = seg_a / w;
    return (da + 0.5 * seg_a) * lambda + (db + 0.5 * seg_b) * (1.0 - lambda);
}

namespace {

// d(y_far, x) = |Y| + d(y_through, x) for both endpoints x of edge X: every
// shortest path from X funnels through y_through into Y.
bool funnels_through(const WeightedGraph& g, const DistanceMatrix& dm, int funnel_edge,
                     int y_far, int y_through, int other_edge, const Tolerance& tol) {
    const Edge& y = g.edge(funnel_edge);
    const Edge& x = g.edge(other_edge);
    return tol.near(dm(y_far, x.u), y.length + dm(y_through, x.u)) &&
           tol.near(dm(y_far, x.v), y.length + dm(y_through, x.v));
}

double linear_value(const WeightedGraph& g, const DistanceMatrix& dm, const EdgePairCase& c,
                    const Tolerance& tol) {
    return 0.5 * g.edge(c.funnel_edge).length +
           vertex_edge_mean(g, dm, c.via_vertex, c.far_edge, tol);
}

struct CycleGeometry {
    int u, v;          // span edge endpoints (stored orientation)
    int root_a, root_b;  // root edge endpoints, ordered so x_a <= x_b
    double span_len, root_len;
    double x_a, x_b;     // break positions on the span edge, from u
    double s_a, s_b;     // mirror positions on the root edge, from root_a
    double theta;        // connecting path length of the inner rectangle
    double mid_len;      // inner rectangle side, x_b - x_a
};

CycleGeometry cycle_geometry(const WeightedGraph& g, const DistanceMatrix& dm, int span,
                             int root) {
    const Edge& s = g.edge(span);
    const Edge& r = g.edge(root);
    CycleGeometry geo;
    geo.u = s.u;
    geo.v = s.v;
    geo.span_len = s.length;
    geo.root_len = r.length;

    auto break_pos = [&](int from_root) {
        return std::clamp(0.5 * (s.length + dm(from_root, s.v) - dm(from_root, s.u)), 0.0,
                          s.length);
    };
    geo.root_a = r.u;
    geo.root_b = r.v;
    geo.x_a = break_pos(geo.root_a);
    geo.x_b = break_pos(geo.root_b);
    if (geo.x_a > geo.x_b) {
        std::swap(geo.root_a, geo.root_b);
        std::swap(geo.x_a, geo.x_b);
    }
    geo.mid_len = geo.x_b - geo.x_a;

    // Mirrors: break points of the root edge as seen from the two break
    // points of the span edge. Both land on the root edge at the same
    // separation mid_len.
    double d_av = dm(geo.root_a, geo.v);
    double d_bu = dm(geo.root_b, geo.u);
    geo.s_a = std::clamp(
        0.5 * (geo.root_len + 2.0 * geo.x_a + d_bu - geo.span_len - d_av), 0.0, geo.root_len);
    geo.s_b = std::clamp(geo.s_a + geo.mid_len, 0.0, geo.root_len);

    // The two arcs connecting matched rectangle corners have equal length;
    // average them against rounding.
    double theta_via_a = geo.s_a + d_av + (geo.span_len - geo.x_b);
    double theta_via_b = (geo.root_len - geo.s_b) + d_bu + geo.x_a;
    geo.theta = 0.5 * (theta_via_a + theta_via_b);
    return geo;
}

double cycle_value(const WeightedGraph& g, const DistanceMatrix& dm, const CycleGeometry& geo,
                   int root, bool coincident, const Tolerance& tol) {
    double mean_u = vertex_edge_mean(g, dm, geo.u, root, tol);
    double mean_v = vertex_edge_mean(g, dm, geo.v, root, tol);
    double we = geo.span_len;

    if (coincident) {
        double x = 0.5 * (geo.x_a + geo.x_b);
        return (x * (0.5 * x + mean_u) + (we - x) * (0.5 * (we - x) + mean_v)) / we;
    }

    double d_av = dm(geo.root_a, geo.v);
    double d_bu = dm(geo.root_b, geo.u);
    double wf = geo.root_len;
    double mid = geo.mid_len;

    // Mean distance from each root to the middle strip of the span edge.
    double strip_from_a = d_av + we - 0.5 * (geo.x_a + geo.x_b);
    double strip_from_b = d_bu + 0.5 * (geo.x_a + geo.x_b);

    double middle =
        (geo.s_a * (0.5 * geo.s_a + strip_from_a) +
         (wf - geo.s_b) * (0.5 * (wf - geo.s_b) + strip_from_b) +
         mid * (geo.theta + 2.0 * mid / 3.0)) /
        wf;

    return (geo.x_a * (0.5 * geo.x_a + mean_u) + (we - geo.x_b) * (0.5 * (we - geo.x_b) + mean_v) +
            mid * middle) /
           we;
}

}  // namespace

EdgePairCase classify_pair(const WeightedGraph& g, const DistanceMatrix& dm, int e, int f,
                           const Tolerance& tol) {
    if (e == f) raise(ErrorKind::invalid_parameter, "classify_pair needs distinct edges");
    int lo = std::min(e, f);
    int hi = std::max(e, f);
    const Edge& le = g.edge(lo);
    const Edge& he = g.edge(hi);

    // Linear candidates in canonical order: (funnel, far endpoint).
    struct Candidate {
        int funnel, y_far, y_through, other;
    };
    const Candidate candidates[4] = {
        {lo, le.u, le.v, hi},
        {lo, le.v, le.u, hi},
        {hi, he.u, he.v, lo},
        {hi, he.v, he.u, lo},
    };

    EdgePairCase found;
    bool have = false;
    for (const Candidate& c : candidates) {
        if (!funnels_through(g, dm, c.funnel, c.y_far, c.y_through, c.other, tol)) continue;
        EdgePairCase cc;
        cc.kind = PairCaseKind::linear;
        cc.funnel_edge = c.funnel;
        cc.via_vertex = c.y_through;
        cc.far_edge = c.other;
        if (!have) {
            found = cc;
            have = true;
        } else {
            assert(std::fabs(linear_value(g, dm, found, tol) - linear_value(g, dm, cc, tol)) <=
                   1e-9 * (1.0 + g.total_length()));
        }
#ifdef NDEBUG
        if (have) break;
#endif
    }
    if (have) return found;

    CycleGeometry geo = cycle_geometry(g, dm, lo, hi);
    EdgePairCase c;
    c.kind = PairCaseKind::cycle;
    c.span_edge = lo;
    c.root_edge = hi;
    c.break_point_a = geo.x_a / geo.span_len;
    c.break_point_b = geo.x_b / geo.span_len;
    bool swapped = geo.root_a != he.u;
    c.mirror_a = swapped ? 1.0 - geo.s_a / geo.root_len : geo.s_a / geo.root_len;
    c.mirror_b = swapped ? 1.0 - geo.s_b / geo.root_len : geo.s_b / geo.root_len;
    c.coincident_breaks =
        geo.mid_len <= std::max(tol.abs, tol.rel * geo.span_len);
    c.theta = geo.theta;
    c.rect_side = geo.mid_len;
    return c;
}

double pair_mean_from_case(const WeightedGraph& g, const DistanceMatrix& dm,
                           const EdgePairCase& c, const Tolerance& tol) {
    switch (c.kind) {
        case PairCaseKind::same_edge:
            return g.edge(c.far_edge).length / 3.0;
        case PairCaseKind::linear:
            return linear_value(g, dm, c, tol);
        case PairCaseKind::cycle: {
            CycleGeometry geo = cycle_geometry(g, dm, c.span_edge, c.root_edge);
            return cycle_value(g, dm, geo, c.root_edge, c.coincident_breaks, tol);
        }
    }
    raise(ErrorKind::invalid_parameter, "unhandled pair case");
}

double pair_mean(const WeightedGraph& g, const DistanceMatrix& dm, int e, int f,
                 const Tolerance& tol) {
    if (e == f) {
        return g.edge(e).length / 3.0;
    }
    EdgePairCase c = classify_pair(g, dm, e, f, tol);
    return pair_mean_from_case(g, dm, c, tol);
}

}  // namespace contmean
