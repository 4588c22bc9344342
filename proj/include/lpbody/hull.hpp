#pragma once

#include <vector>

#include "lpbody/vec.hpp"

namespace lpb {

// Strict convex hull of planar points (z ignored), counter-clockwise order.
// Points interior to the hull or on an edge (within eps_rel of the point
// cloud scale) are dropped.
std::vector<int> hull2d(const std::vector<Vec>& pts, double eps_rel = 1e-12);

struct HullTri {
    int a, b, c;
};

// Incremental 3D convex hull. Returns outward-oriented triangles of the
// hull; coplanar faces come out triangulated. Throws UnboundedBody when the
// points are affinely degenerate (no full-dimensional hull).
std::vector<HullTri> hull3d(const std::vector<Vec>& pts, double eps_rel = 1e-12);

}  // namespace lpb
