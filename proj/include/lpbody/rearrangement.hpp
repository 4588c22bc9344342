#pragma once

#include <optional>
#include <vector>

#include "lpbody/pwa.hpp"

namespace lpb {

// Unit-ball volume omega_s = pi^{s/2} / Gamma(1 + s/2); real s >= 0.
double unit_ball_volume(double s);

// Decreasing rearrangement f* sampled on an increasing s-grid, interpolated
// piecewise linearly; slope[k] is the derivative on [s_k, s_{k+1}].
struct RadialProfile {
    std::vector<double> s;
    std::vector<double> value;   // non-increasing, value.back() == 0
    std::vector<double> slope;   // size s.size()-1, <= 0

    double support_measure() const { return s.empty() ? 0.0 : s.back(); }
    double eval(double at) const;              // f*(at), 0 beyond the grid
    double invert(double t) const;             // smallest s with f*(s) <= t
    double lq_norm(double q) const;            // (int_0^S f*(s)^q ds)^{1/q}, exact per interval
    // int_0^S s^beta (-slope)^p ds, exact per interval (beta > -1).
    double slope_power_integral(double beta, double p) const;
};

// Convex symmetrization f^K: pairs f* with the dilate K~ of K normalized to
// |K~| = omega_n; the ball case is the symmetric rearrangement f^star.
struct RadialConvexFunction {
    int dim = 0;
    bool ball = true;
    std::optional<Polytope> shape;  // K~, volume omega_n, when not a ball
    RadialProfile profile;

    double eval(const Vec& x) const;  // f*(omega_n h(K~°, x)^n)
};

double distribution_function_exact(const PwaFunction& f, double t);  // alias of pwa op

RadialProfile decreasing_rearrangement(const PwaFunction& f, int grid_size = 1024);

RadialConvexFunction convex_symmetrization(const PwaFunction& f, const Polytope& K,
                                           int grid_size = 1024);
RadialConvexFunction symmetric_rearrangement(const PwaFunction& f, int grid_size = 1024);

struct XiFactor {
    double proof_version;      // measure factor: S_p(<f^K>_p) = xi * S_p(K~)
    double statement_version;  // dilation factor: <f^K>_p = xi^{1/(n-p)} K~  (p != n)
};

// Lemma-4 factor from the profile; p != n for the statement version.
XiFactor xi_factor(const RadialProfile& profile, int n, double p);

// || grad f^star ||_p for ball-shaped radial functions; exact per interval.
double radial_gradient_norm(const RadialConvexFunction& g, double p);

// Gradient measure of f^K: atoms at the facet normals of K~ with weights
// n * R * S_p(K~)_j, R the radial slope integral; exact closed form.
DiscreteSphereMeasure radial_gradient_measure(const RadialConvexFunction& g, double p);

}  // namespace lpb
