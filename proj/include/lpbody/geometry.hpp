#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lpbody/vec.hpp"

namespace lpb {

// Tolerances shared across the geometry kernel.
inline constexpr double kAngularMergeTol = 1e-9;   // duplicate directions
inline constexpr double kFacetAreaRelTol = 1e-12;  // redundancy threshold vs volume^((n-1)/n)

struct Facet {
    double measure = 0.0;        // (n-1)-measure
    std::vector<int> cycle;      // vertex indices, cyclic for 3D facets, [start,end] for 2D edges
};

// Convex polytope with the origin in its interior, canonical H-rep plus
// cached V-rep. Instances are immutable after construction.
class Polytope {
public:
    int dim = 0;
    std::vector<Vec> normals;     // unit outer facet normals
    std::vector<double> offsets;  // support numbers h_j > 0
    std::vector<Vec> vertices;
    std::vector<Facet> facets;    // facets[j] belongs to normals[j]
    double volume = 0.0;

    double support(const Vec& u) const;  // h(K, u) via the vertex cache
    double diameter() const;
    Vec centroid() const;
    int facet_count() const { return static_cast<int>(normals.size()); }
};

struct Atom {
    Vec u;       // unit direction
    double w;    // positive weight
};

// Finite positive measure on the sphere; atoms with directions closer than
// the angular merge tolerance are combined at construction.
class DiscreteSphereMeasure {
public:
    int dim = 0;
    std::vector<Atom> atoms;

    static DiscreteSphereMeasure make(int dim, std::vector<Atom> raw);
    double total() const;
    bool empty() const { return atoms.empty(); }
    DiscreteSphereMeasure negated() const;  // directions u -> -u
    static DiscreteSphereMeasure sum(const DiscreteSphereMeasure& a,
                                     const DiscreteSphereMeasure& b);
};

// Convex body known only through an evaluable support function. Covers
// L_p combinations and projection bodies, which are not polytopes.
struct SupportBody {
    int dim = 0;
    std::string descriptor;
    std::function<double(const Vec&)> h;  // evaluated on unit vectors only

    double operator()(const Vec& u) const { return h(u); }
};

// Internal Wulff-shape evaluation: geometry of the intersection
// {x : x.u_j <= h_j} keeping every halfspace (hidden ones get area 0).
struct WulffData {
    double volume = 0.0;
    std::vector<double> areas;
    std::vector<Vec> vertices;
    std::vector<std::vector<int>> cycles;  // per input halfspace; empty if hidden
};
WulffData wulff_eval(int dim, const std::vector<Vec>& normals, const std::vector<double>& h,
                     bool want_cycles = false);

// H-rep cleanup: normalizes directions, merges duplicates, drops redundant
// halfspaces, computes vertices and facet measures.
Polytope canonicalize(int dim, std::vector<Vec> normals, std::vector<double> offsets);

// S_p(K, .): one atom per facet with weight area * h^(1-p).
DiscreteSphereMeasure lp_surface_measure(const Polytope& K, double p);

// V_p(K, L) = (1/n) sum h(L,u_j)^p dS_p(K)_j. Exact given the facet data.
double lp_mixed_volume(const Polytope& K, const SupportBody& L, double p);
double lp_mixed_volume(const Polytope& K, const Polytope& L, double p);

SupportBody support_body(const Polytope& K);
SupportBody ball_support(int dim, double radius = 1.0);

// Firey combination: h^p = alpha h(K,.)^p + beta h(L,.)^p.
SupportBody lp_combination(double alpha, const SupportBody& K, double beta, const SupportBody& L,
                           double p);

// Image M K; normals map as M^{-T} u (renormalized), offsets rescale.
Polytope transform(const Polytope& K, const Mat& M);

// Polar body of K as a polytope (vertices of K become facets of K°).
Polytope polar_polytope(const Polytope& K);

// |K°| through the dual polytope volume; exact.
double polar_volume_exact(const Polytope& K);

Polytope make_box(int dim, double half_extent);  // [-s,s]^n helper

}  // namespace lpb
