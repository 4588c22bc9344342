#include "lpbody/projection.hpp"

#include <cmath>

namespace lpb {

double sphere_cosine_moment(int n, double p) {
    return 2.0 * unit_ball_volume(n + p - 2.0) / unit_ball_volume(p - 1.0);
}

double alpha_sobolev(int n, double p) {
    if (!(p > 1.0 && p < n)) throw InputError("alpha_sobolev needs 1 < p < n");
    double omega = unit_ball_volume(n);
    return std::pow(n, -1.0 / p) * std::pow((p - 1.0) / (n - p), 1.0 - 1.0 / p) *
           std::pow(std::tgamma(static_cast<double>(n)) /
                        (omega * std::tgamma(n / p) * std::tgamma(n + 1.0 - n / p)),
                    1.0 / n);
}

double alpha_energy_calibrated(int n, double p) {
    double omega = unit_ball_volume(n);
    return std::pow(n * omega, 1.0 / n) *
           std::pow(n * omega * unit_ball_volume(p - 1.0) / unit_ball_volume(n + p - 2.0),
                    1.0 / p);
}

double alpha_morrey(int n, double p) {
    if (!(p > n)) throw InputError("alpha_morrey needs p > n");
    return std::pow(n, -1.0 / p) * std::pow(unit_ball_volume(n), -1.0 / n) *
           std::pow((p - 1.0) / (p - n), (p - 1.0) / p);
}

double petty_ball_product(int n, double p) {
    double omega = unit_ball_volume(n);
    double half_moment = 0.5 * sphere_cosine_moment(n, p);
    return std::pow(omega, static_cast<double>(n) / p) * std::pow(half_moment, -double(n) / p);
}

double normalized_petty_ball_ratio(int n) {
    return 2.0 * unit_ball_volume(n) / sphere_cosine_moment(n, n);
}

double cosine_transform_plus(const DiscreteSphereMeasure& mu, double p, const Vec& v) {
    double acc = 0.0;
    for (const auto& a : mu.atoms) {
        double c = dot(v, a.u);
        if (c > 0.0) acc += std::pow(c, p) * a.w;
    }
    return acc;
}

SupportBody projection_body(const DiscreteSphereMeasure& mu, double p, double lambda) {
    if (!(p > 1.0)) throw InputError("projection body needs p > 1");
    if (lambda < 0.0 || lambda > 1.0) throw InputError("lambda must lie in [0,1]");
    if (!hemisphere_check(mu))
        throw HemisphereViolation("projection body of a hemisphere-degenerate measure");
    DiscreteSphereMeasure m = mu;
    return {mu.dim, "projection_body", [m, p, lambda](const Vec& v) {
                double acc = 0.0;
                for (const auto& a : m.atoms) {
                    double c = dot(v, a.u);
                    if (c > 0.0)
                        acc += (1.0 - lambda) * std::pow(c, p) * a.w;
                    else if (c < 0.0)
                        acc += lambda * std::pow(-c, p) * a.w;
                }
                return std::pow(acc, 1.0 / p);
            }};
}

SupportBody projection_body(const Polytope& K, double p, double lambda) {
    return projection_body(lp_surface_measure(K, p), p, lambda);
}

SupportBody normalized_projection_body(const Polytope& K, double lambda) {
    const int n = K.dim;
    DiscreteSphereMeasure sn = lp_surface_measure(K, n);
    const double vol = K.volume;
    return {n, "normalized_projection_body", [sn, lambda, n, vol](const Vec& v) {
                double acc = 0.0;
                for (const auto& a : sn.atoms) {
                    double c = dot(v, a.u);
                    if (c > 0.0)
                        acc += (1.0 - lambda) * std::pow(c, n) * a.w;
                    else if (c < 0.0)
                        acc += lambda * std::pow(-c, n) * a.w;
                }
                return std::pow(acc / vol, 1.0 / n);
            }};
}

double polar_volume(const SupportBody& B, const SphericalQuadrature& Q) {
    if (B.dim != Q.dim) throw QuadratureMissing("quadrature dimension mismatch");
    std::vector<double> terms(Q.size());
    for (size_t i = 0; i < Q.size(); ++i) {
        double h = B(Q.nodes[i]);
        if (!(h > 0.0)) throw NonpositiveSupport("support function vanishes at a node");
        terms[i] = std::pow(h, -double(B.dim)) * Q.weights[i];
    }
    return pairwise_sum(terms) / B.dim;
}

double polar_volume_polytope(const Polytope& K, const SphericalQuadrature& Q) {
    return polar_volume(support_body(K), Q);
}

namespace {

double energy_constant(int n, double p, ConstantMode mode) {
    if (mode == ConstantMode::calibrated) return alpha_energy_calibrated(n, p);
    // Paper-mode formula, reading the omega subscript as n+p-2; numerically
    // this agrees with the calibrated constant.
    return std::pow(n * unit_ball_volume(n), 1.0 / n) *
           std::pow(n * unit_ball_volume(n) * unit_ball_volume(p - 1.0) /
                        unit_ball_volume(n + p - 2.0),
                    1.0 / p);
}

template <typename EnergyFn>
EnergyValue energy_from(const EnergyFn& E, int dim, double lambda, double p,
                        const SphericalQuadrature& Q, ConstantMode mode) {
    if (Q.dim != dim) throw QuadratureMissing("quadrature dimension mismatch");
    std::vector<double> terms(Q.size());
    for (size_t i = 0; i < Q.size(); ++i) {
        double e = E(Q.nodes[i]);
        if (!(e > 0.0))
            throw DegenerateDirection("directional energy vanishes on a quadrature node");
        terms[i] = std::pow(e, -double(dim) / p) * Q.weights[i];
    }
    EnergyValue out;
    out.dim = dim;
    out.lambda = lambda;
    out.p = p;
    out.quadrature_level = Q.level;
    out.raw_functional = std::pow(pairwise_sum(terms), -1.0 / dim);
    out.constant = energy_constant(dim, p, mode);
    out.constant_mode = (mode == ConstantMode::calibrated) ? "calibrated" : "paper";
    out.value = out.constant * out.raw_functional;
    return out;
}

}  // namespace

EnergyValue affine_energy(const PwaFunction& f, double lambda, double p,
                          const SphericalQuadrature& Q, ConstantMode mode) {
    if (!f.nontrivial) throw TrivialFunction("affine energy of a null function");
    return energy_from([&](const Vec& v) { return directional_energy(f, v, lambda, p); }, f.dim,
                       lambda, p, Q, mode);
}

EnergyValue affine_energy(const RadialConvexFunction& g, double lambda, double p,
                          const SphericalQuadrature& Q, ConstantMode mode) {
    const int n = g.dim;
    const double omega = unit_ball_volume(n);
    const double beta = (n - 1.0) * p / n;
    const double R = std::pow(n * omega, p - 1.0) * std::pow(omega, -beta) *
                     g.profile.slope_power_integral(beta, p);
    if (!(R > 0.0)) throw TrivialFunction("affine energy of a null radial function");
    if (g.ball) {
        // E(v) is constant: R * I_p / 2 regardless of lambda.
        const double e_const = R * 0.5 * sphere_cosine_moment(n, p);
        return energy_from([&](const Vec&) { return e_const; }, n, lambda, p, Q, mode);
    }
    DiscreteSphereMeasure sp = lp_surface_measure(*g.shape, p);
    return energy_from(
        [&](const Vec& v) {
            double acc = 0.0;
            for (const auto& a : sp.atoms) {
                double c = dot(a.u, v);
                if (c < 0.0)
                    acc += (1.0 - lambda) * std::pow(-c, p) * a.w;
                else if (c > 0.0)
                    acc += lambda * std::pow(c, p) * a.w;
            }
            return R * acc;
        },
        n, lambda, p, Q, mode);
}

}  // namespace lpb
