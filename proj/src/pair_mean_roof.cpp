#include "contmean/pair_mean_roof.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace contmean {

namespace {

double plane_at(const RoofPlane& p, double x, double y) {
    return p.coef_x * x + p.coef_y * y + p.offset;
}

struct PolygonMoments {
    double area;
    double cx_times_area;  // integral of x over the polygon
    double cy_times_area;  // integral of y
};

PolygonMoments polygon_moments(const std::vector<RoofPoint>& poly) {
    PolygonMoments m{0, 0, 0};
    std::size_t n = poly.size();
    if (n < 3) return m;
    for (std::size_t i = 0; i < n; ++i) {
        const RoofPoint& p = poly[i];
        const RoofPoint& q = poly[(i + 1) % n];
        double cross = p.x * q.y - q.x * p.y;
        m.area += cross;
        m.cx_times_area += (p.x + q.x) * cross;
        m.cy_times_area += (p.y + q.y) * cross;
    }
    m.area *= 0.5;
    m.cx_times_area /= 6.0;
    m.cy_times_area /= 6.0;
    return m;
}

// Keeps the part of a convex polygon where a*x + b*y + c <= 0.
std::vector<RoofPoint> clip_half_plane(const std::vector<RoofPoint>& poly, double a, double b,
                                       double c) {
    std::vector<RoofPoint> out;
    std::size_t n = poly.size();
    out.reserve(n + 2);
    for (std::size_t i = 0; i < n; ++i) {
        const RoofPoint& p = poly[i];
        const RoofPoint& q = poly[(i + 1) % n];
        double hp = a * p.x + b * p.y + c;
        double hq = a * q.x + b * q.y + c;
        if (hp <= 0) out.push_back(p);
        if ((hp < 0 && hq > 0) || (hp > 0 && hq < 0)) {
            double t = hp / (hp - hq);
            out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        }
    }
    return out;
}

}  // namespace

RoofDiagram build_roof(const WeightedGraph& g, const DistanceMatrix& dm, int e, int f) {
    if (e == f) {
        raise(ErrorKind::invalid_parameter, "build_roof needs two distinct edges");
    }
    const Edge& ex = g.edge(e);
    const Edge& ey = g.edge(f);

    RoofDiagram roof;
    roof.edge_x = e;
    roof.edge_y = f;
    roof.len_x = ex.length;
    roof.len_y = ey.length;

    // One candidate plane per rectangle corner: the cost of routing through
    // that endpoint pair. z = |x - cx| + |y - cy| + d(corner), affine over
    // the rectangle.
    std::array<RoofPlane, 4> candidates;
    for (int corner = 0; corner < 4; ++corner) {
        bool far_x = (corner & 1) != 0;
        bool far_y = (corner & 2) != 0;
        double weight = dm(far_x ? ex.v : ex.u, far_y ? ey.v : ey.u);
        RoofPlane p;
        p.coef_x = far_x ? -1.0 : 1.0;
        p.coef_y = far_y ? -1.0 : 1.0;
        p.offset = weight + (far_x ? roof.len_x : 0.0) + (far_y ? roof.len_y : 0.0);
        p.corner = corner;
        p.corner_weight = weight;
        candidates[static_cast<std::size_t>(corner)] = p;
    }

    // Drop planes that are nowhere below some other plane; the difference of
    // two candidates is affine, so checking the rectangle corners is exact.
    const double xs[2] = {0.0, roof.len_x};
    const double ys[2] = {0.0, roof.len_y};
    std::array<bool, 4> dominated{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4 && !dominated[static_cast<std::size_t>(i)]; ++j) {
            if (i == j || dominated[static_cast<std::size_t>(j)]) continue;
            double min_gap = std::numeric_limits<double>::infinity();
            for (double x : xs) {
                for (double y : ys) {
                    min_gap = std::min(min_gap,
                                       plane_at(candidates[static_cast<std::size_t>(i)], x, y) -
                                           plane_at(candidates[static_cast<std::size_t>(j)], x, y));
                }
            }
            if (min_gap >= 0) dominated[static_cast<std::size_t>(i)] = true;
        }
    }
    for (int i = 0; i < 4; ++i) {
        if (!dominated[static_cast<std::size_t>(i)]) {
            roof.planes.push_back(candidates[static_cast<std::size_t>(i)]);
        }
    }

    const std::vector<RoofPoint> rectangle = {
        {0, 0}, {roof.len_x, 0}, {roof.len_x, roof.len_y}, {0, roof.len_y}};
    double area_floor = default_tolerance().abs * roof.len_x * roof.len_y;

    for (std::size_t i = 0; i < roof.planes.size(); ++i) {
        std::vector<RoofPoint> cell = rectangle;
        for (std::size_t j = 0; j < roof.planes.size() && !cell.empty(); ++j) {
            if (i == j) continue;
            const RoofPlane& pi = roof.planes[i];
            const RoofPlane& pj = roof.planes[j];
            cell = clip_half_plane(cell, pi.coef_x - pj.coef_x, pi.coef_y - pj.coef_y,
                                   pi.offset - pj.offset);
        }
        PolygonMoments m = polygon_moments(cell);
        if (m.area <= area_floor) continue;
        RoofRegion region;
        region.plane = static_cast<int>(i);
        region.polygon = std::move(cell);
        region.area = m.area;
        const RoofPlane& p = roof.planes[i];
        region.volume = p.coef_x * m.cx_times_area + p.coef_y * m.cy_times_area + p.offset * m.area;
        roof.regions.push_back(std::move(region));
    }
    return roof;
}

double roof_mean(const RoofDiagram& roof) {
    double volume = 0;
    for (const RoofRegion& r : roof.regions) volume += r.volume;
    return volume / (roof.len_x * roof.len_y);
}

double roof_mean_prism(const RoofDiagram& roof) {
    double volume = 0;
    for (const RoofRegion& r : roof.regions) {
        const RoofPlane& p = roof.planes[static_cast<std::size_t>(r.plane)];
        const auto& poly = r.polygon;
        for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
            const RoofPoint& a = poly[0];
            const RoofPoint& b = poly[i];
            const RoofPoint& c = poly[i + 1];
            double area = 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
            double avg_height =
                (plane_at(p, a.x, a.y) + plane_at(p, b.x, b.y) + plane_at(p, c.x, c.y)) / 3.0;
            volume += area * avg_height;
        }
    }
    return volume / (roof.len_x * roof.len_y);
}

double same_edge_mean(double length) {
    if (!(length > 0)) {
        raise(ErrorKind::invalid_parameter, "edge length must be positive");
    }
    return length / 3.0;
}

}  // namespace contmean
