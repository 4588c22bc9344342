#include "lpbody/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lpb {

double unit_ball_volume(double s) {
    return std::pow(std::numbers::pi, 0.5 * s) / std::tgamma(1.0 + 0.5 * s);
}

double RadialProfile::eval(double at) const {
    if (s.empty()) return 0.0;
    if (at <= s.front()) return value.front();
    if (at >= s.back()) return 0.0;
    size_t k = std::upper_bound(s.begin(), s.end(), at) - s.begin() - 1;
    return value[k] + slope[k] * (at - s[k]);
}

double RadialProfile::invert(double t) const {
    if (s.empty()) return 0.0;
    if (t >= value.front()) return s.front();
    if (t <= 0.0) return s.back();
    // value is non-increasing; find the interval containing t.
    size_t lo = 0, hi = s.size() - 1;
    while (lo + 1 < hi) {
        size_t mid = (lo + hi) / 2;
        if (value[mid] > t)
            lo = mid;
        else
            hi = mid;
    }
    if (slope[lo] == 0.0) return s[hi];
    return s[lo] + (t - value[lo]) / slope[lo];
}

double RadialProfile::lq_norm(double q) const {
    double acc = 0.0;
    for (size_t k = 0; k + 1 < s.size(); ++k) {
        double ds = s[k + 1] - s[k];
        double v0 = value[k], v1 = value[k + 1];
        if (ds <= 0.0) continue;
        if (slope[k] == 0.0 || v0 == v1)
            acc += std::pow(v0, q) * ds;
        else
            acc += (std::pow(v1, q + 1.0) - std::pow(v0, q + 1.0)) / (slope[k] * (q + 1.0));
    }
    return std::pow(acc, 1.0 / q);
}

double RadialProfile::slope_power_integral(double beta, double p) const {
    double acc = 0.0;
    for (size_t k = 0; k + 1 < s.size(); ++k) {
        double sg = -slope[k];
        if (sg <= 0.0) continue;
        acc += std::pow(sg, p) *
               (std::pow(s[k + 1], beta + 1.0) - std::pow(s[k], beta + 1.0)) / (beta + 1.0);
    }
    return acc;
}

double RadialConvexFunction::eval(const Vec& x) const {
    double gauge;
    if (ball) {
        gauge = norm(x);
    } else {
        gauge = 0.0;
        for (size_t j = 0; j < shape->normals.size(); ++j)
            gauge = std::fmax(gauge, dot(x, shape->normals[j]) / shape->offsets[j]);
    }
    return profile.eval(unit_ball_volume(dim) * std::pow(gauge, dim));
}

double distribution_function_exact(const PwaFunction& f, double t) {
    return distribution_function(f, t);
}

RadialProfile decreasing_rearrangement(const PwaFunction& f, int grid_size) {
    if (grid_size < 64) throw InputError("rearrangement grid must have at least 64 points");
    SliceDensity sd(f);
    const double vmax = sd.max_value();
    RadialProfile prof;
    if (vmax <= 0.0) {
        prof.s = {0.0};
        prof.value = {0.0};
        return prof;
    }

    // t-grid: all critical values plus uniform refinement.
    std::vector<double> ts = sd.breakpoints();
    for (int i = 0; i <= grid_size; ++i) ts.push_back(vmax * static_cast<double>(i) / grid_size);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end(),
                         [&](double a, double b) { return std::fabs(a - b) <= 1e-15 * vmax; }),
             ts.end());

    // Walk t from vmax down to 0: s = mu(t) grows from 0 to |sprt f|.
    const double s_tol = 1e-14 * std::fmax(sd.support_measure(), 1e-300);
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        double t = *it;
        double s = sd.mu(t);
        if (prof.s.empty()) {
            prof.s.push_back(s);
            prof.value.push_back(t);
            continue;
        }
        if (s > prof.s.back() + s_tol) {
            prof.s.push_back(s);
            prof.value.push_back(t);
        } else {
            prof.value.back() = t;  // f*(s) = inf{t : mu(t) <= s}
        }
    }
    if (prof.s.size() < 2) throw TrivialFunction("rearrangement of a null function");
    prof.value.back() = 0.0;  // exact zero at s = |sprt f|
    prof.slope.resize(prof.s.size() - 1);
    for (size_t k = 0; k + 1 < prof.s.size(); ++k)
        prof.slope[k] = (prof.value[k + 1] - prof.value[k]) / (prof.s[k + 1] - prof.s[k]);
    return prof;
}

RadialConvexFunction convex_symmetrization(const PwaFunction& f, const Polytope& K,
                                           int grid_size) {
    RadialConvexFunction g;
    g.dim = f.dim;
    if (K.dim != f.dim) throw DimensionMismatch("symmetrization shape dimension mismatch");
    double tau = std::pow(unit_ball_volume(f.dim) / K.volume, 1.0 / f.dim);
    std::vector<double> offs = K.offsets;
    for (double& h : offs) h *= tau;
    g.ball = false;
    g.shape = canonicalize(K.dim, K.normals, offs);
    g.profile = decreasing_rearrangement(f, grid_size);
    return g;
}

RadialConvexFunction symmetric_rearrangement(const PwaFunction& f, int grid_size) {
    RadialConvexFunction g;
    g.dim = f.dim;
    g.ball = true;
    g.profile = decreasing_rearrangement(f, grid_size);
    return g;
}

// R = int_0^inf |psi'(r)|^p r^{n-1} dr for psi(r) = f*(omega_n r^n).
static double radial_R(const RadialProfile& prof, int n, double p) {
    double omega = unit_ball_volume(n);
    double beta = (n - 1.0) * p / n;
    return std::pow(n * omega, p - 1.0) * std::pow(omega, -beta) *
           prof.slope_power_integral(beta, p);
}

XiFactor xi_factor(const RadialProfile& profile, int n, double p) {
    if (profile.s.size() < 2) throw TrivialFunction("xi factor of a null profile");
    if (profile.value.back() > 1e-6 * profile.value.front())
        throw DivergentIntegral("profile does not decay to zero within the grid");
    double omega = unit_ball_volume(n);
    double beta = p - p / n;
    double integral = profile.slope_power_integral(beta, p);
    XiFactor xi;
    xi.proof_version = std::pow(static_cast<double>(n), p) *
                       std::pow(omega, (p - n) / n) * integral;
    if (std::fabs(p - n) < 1e-12)
        xi.statement_version = std::numeric_limits<double>::quiet_NaN();
    else
        xi.statement_version = std::pow(xi.proof_version, 1.0 / (n - p));
    return xi;
}

double radial_gradient_norm(const RadialConvexFunction& g, double p) {
    if (!g.ball) throw InputError("radial gradient norm is defined for ball-shaped functions");
    double R = radial_R(g.profile, g.dim, p);
    return std::pow(g.dim * unit_ball_volume(g.dim) * R, 1.0 / p);
}

DiscreteSphereMeasure radial_gradient_measure(const RadialConvexFunction& g, double p) {
    if (g.ball)
        throw InputError("gradient measure of a ball-shaped radial function is not atomic");
    double R = radial_R(g.profile, g.dim, p);
    DiscreteSphereMeasure sp = lp_surface_measure(*g.shape, p);
    for (auto& a : sp.atoms) a.w *= g.dim * R;
    return sp;
}

}  // namespace lpb
