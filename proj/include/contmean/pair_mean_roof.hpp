#ifndef CONTMEAN_PAIR_MEAN_ROOF_HPP
#define CONTMEAN_PAIR_MEAN_ROOF_HPP

#include <vector>

#include "contmean/shortest_paths.hpp"

namespace contmean {

struct RoofPoint {
    double x;
    double y;
};

// Affine sheet z = coef_x * x + coef_y * y + offset over the edge-pair
// rectangle. Coordinates are physical (x in [0,|e|], y in [0,|f|]), so the
// slopes are +-1 and bisectors run axis-parallel or at 45 degrees.
struct RoofPlane {
    double coef_x;
    double coef_y;
    double offset;
    // Which endpoint pair the routes go through: bit 0 set = far endpoint of
    // e (v), bit 1 set = far endpoint of f (v').
    int corner;
    double corner_weight;  // vertex-to-vertex distance at that corner
};

struct RoofRegion {
    int plane;  // index into RoofDiagram::planes
    std::vector<RoofPoint> polygon;
    double area;
    double volume;  // integral of the plane over the polygon
};

// Lower envelope of the candidate planes over [0,|e|] x [0,|f|]: the regions
// are the cells of the additively weighted L1 Voronoi diagram of the
// rectangle corners, clipped to the rectangle.
struct RoofDiagram {
    int edge_x = -1;
    int edge_y = -1;
    double len_x = 0;
    double len_y = 0;
    std::vector<RoofPlane> planes;    // dominated candidates already removed
    std::vector<RoofRegion> regions;  // tile the rectangle
};

// Builds the diagram for two distinct edges. Planes that are nowhere minimal
// (for instance two of the four whenever the edges share an endpoint) are
// dropped, as are regions of negligible area.
RoofDiagram build_roof(const WeightedGraph& g, const DistanceMatrix& dm, int e, int f);

// mu_c(e, f) = sum of region volumes / (|e| * |f|). Integration uses the
// centroid identity for an affine function over a convex polygon.
double roof_mean(const RoofDiagram& roof);

// Same value via the truncated-prism rule (triangulate each region, average
// the corner heights). Kept as a differential-testing alternative.
double roof_mean_prism(const RoofDiagram& roof);

// mu_c(e, e) for a single edge (or any path) of the given length: length/3.
double same_edge_mean(double length);

}  // namespace contmean

#endif
