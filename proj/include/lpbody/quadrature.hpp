#pragma once

#include <span>
#include <vector>

#include "lpbody/vec.hpp"

namespace lpb {

// Deterministic pairwise summation; used for sphere-integral accumulation so
// results do not depend on evaluation order.
double pairwise_sum(std::span<const double> xs);

// Quadrature nodes/weights on S^{n-1}. 2D: uniform angles with equal
// weights (2^(level+8) nodes). 3D: icosahedral subdivision, one node per
// spherical triangle centroid weighted by the exact spherical area.
struct SphericalQuadrature {
    int dim = 0;
    int level = 0;
    std::vector<Vec> nodes;
    std::vector<double> weights;

    size_t size() const { return nodes.size(); }
    double total_weight() const;
};

SphericalQuadrature build_quadrature(int dim, int level);

// Vertices of the level-times-subdivided icosahedron (10*4^level + 2 unit
// directions); used for ball-proxy polytopes.
std::vector<Vec> icosphere_vertices(int level);

}  // namespace lpb
