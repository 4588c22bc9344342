#pragma once

#include <array>
#include <functional>
#include <vector>

#include "lpbody/geometry.hpp"
#include "lpbody/solver.hpp"

namespace lpb {

// Compactly supported continuous piecewise-affine function given as a
// simplicial mesh with per-vertex values. Per-simplex gradient/volume
// caches are computed at construction; instances are immutable.
struct PwaFunction {
    int dim = 0;
    std::vector<Vec> vertices;
    std::vector<std::array<int, 4>> simplices;  // [3] == -1 in 2D
    std::vector<double> values;

    std::vector<Vec> gradients;      // per simplex
    std::vector<double> vols;        // per simplex, positive
    std::vector<double> constants;   // f(x) = g.x + c on the simplex
    bool nontrivial = false;

    // audit: pairwise disjoint-interior check (loader path).
    // boundary_zero: require f == 0 on boundary vertices of the support union.
    static PwaFunction make(int dim, std::vector<Vec> verts,
                            std::vector<std::array<int, 4>> simplices, std::vector<double> values,
                            bool audit = false, bool boundary_zero = true);

    double eval(const Vec& x) const;   // 0 outside the mesh
    double max_abs() const;
    double total_mesh_volume() const;
    double coord_scale() const;
    int simplex_count() const { return static_cast<int>(simplices.size()); }
    int verts_per_simplex() const { return dim + 1; }
};

// --- exact simplex / level-set primitives ---------------------------------

// Volume of {x in simplex : affine(x) > t}; vals are the vertex values.
double clip_volume_above(int dim, const Vec* verts, const double* vals, double t);

// Sub-simplices of the side {affine >= t} (exact partition).
std::vector<std::array<Vec, 4>> clip_pieces_above(int dim, const Vec* verts, const double* vals,
                                                  double t);

// Piecewise-polynomial representation of t -> |{ |f| > t }|. Exact: the
// distribution function of a pwa function is a polynomial of degree <= n
// between consecutive critical values.
class SliceDensity {
public:
    explicit SliceDensity(const PwaFunction& f);

    double mu(double t) const;               // evaluates |{ |f| > t }|
    double power_integral(double q) const;   // int |f|^q dx, exact for q >= 1
    // int phi(|f|) dx - phi(0) |sprt f| for smooth phi with derivative dphi.
    double apply(const std::function<double(double)>& dphi) const;
    double support_measure() const { return mu_at_zero_; }
    double max_value() const { return breaks_.empty() ? 0.0 : breaks_.back(); }
    const std::vector<double>& breakpoints() const { return breaks_; }

private:
    int dim_;
    std::vector<double> breaks_;                    // 0 = b_0 < b_1 < ... < b_K
    std::vector<std::array<double, 4>> coeffs_;     // mu on [b_k, b_{k+1}] in tau-monomials
    double mu_at_zero_ = 0.0;
};

// --- operations ------------------------------------------------------------

// S_p(f, .) = sum over simplices of n |M_i| |g_i|^p at direction -g_i/|g_i|.
DiscreteSphereMeasure gradient_measure(const PwaFunction& f, double p);
// Same but returns an empty measure instead of throwing on flat functions.
DiscreteSphereMeasure gradient_measure_or_empty(const PwaFunction& f, double p);

// Optimal Sobolev body <f>_p = solve(S_p(f,.), p), p > 1, p != n.
Polytope sobolev_body(const PwaFunction& f, double p, const SolverConfig& cfg = {});

// Volume-normalized body (p = n); the matching measure drops the factor n.
Polytope sobolev_body_normalized(const PwaFunction& f, const SolverConfig& cfg = {});

// Cone function l_P: 1 at the origin, 0 outside P, affine on the facet fan.
PwaFunction cone_function(const Polytope& P);

// Represents f o phi^{-1} (vertices mapped by phi, values carried).
PwaFunction compose_linear(const PwaFunction& f, const Mat& phi);
PwaFunction translate(const PwaFunction& f, const Vec& x0);  // f(. - x0)
PwaFunction scale_values(const PwaFunction& f, double t);    // t * f

// Pointwise max/min on a common mesh refinement. 2D: full overlay; 3D only
// for identical meshes or disjoint supports. Inputs must be nonnegative.
PwaFunction lattice_join(const PwaFunction& f, const PwaFunction& g);
PwaFunction lattice_meet(const PwaFunction& f, const PwaFunction& g);

// sum_i |M_i| ((1-l)(g_i.v)_+^p + l (g_i.v)_-^p); exact.
double directional_energy(const PwaFunction& f, const Vec& v, double lambda, double p);

double power_integral(const PwaFunction& f, double q);     // int |f|^q dx
double lp_star_norm(const PwaFunction& f, double q);       // (int |f|^q)^{1/q}
double distribution_function(const PwaFunction& f, double t);

}  // namespace lpb
