#pragma once

#include <string>

#include "lpbody/geometry.hpp"
#include "lpbody/pwa.hpp"
#include "lpbody/quadrature.hpp"
#include "lpbody/rearrangement.hpp"

namespace lpb {

// --- sharp constants ---------------------------------------------------------

// int_{S^{n-1}} |u.e|^p du = 2 omega_{n+p-2} / omega_{p-1}.
double sphere_cosine_moment(int n, double p);

// Sobolev best constant (1 < p < n).
double alpha_sobolev(int n, double p);

// Affine-energy normalization making Omega(f*) = ||grad f*||_p on radial
// functions: (n omega_n)^{1/n} (n omega_n omega_{p-1} / omega_{n+p-2})^{1/p}.
double alpha_energy_calibrated(int n, double p);

// Morrey best constant (p > n).
double alpha_morrey(int n, double p);

// |B|^{n/p-1} |Phi°_{l,p} B| for the unit ball, any lambda.
double petty_ball_product(int n, double p);
// |Phi~°_{l,n} B| / |B| for the unit ball.
double normalized_petty_ball_ratio(int n);

// --- operations --------------------------------------------------------------

// (C_p^+ mu)(v) = sum (v.u_j)_+^p w_j.
double cosine_transform_plus(const DiscreteSphereMeasure& mu, double p, const Vec& v);

// Phi_{lambda,p} body of the measure mu = S_p(K,.):
// h(v)^p = (1-l) C_p^+(mu)(v) + l C_p^+(mu^-)(v).
SupportBody projection_body(const DiscreteSphereMeasure& mu, double p, double lambda);
SupportBody projection_body(const Polytope& K, double p, double lambda);

// Normalized p = n variant: h^n(v) = (1/|K|) int ((1-l)(u.v)_+^n + l (u.v)_-^n) dS_n(K,u).
SupportBody normalized_projection_body(const Polytope& K, double lambda);

// |B°| = (1/n) int h(B,u)^{-n} du by quadrature.
double polar_volume(const SupportBody& B, const SphericalQuadrature& Q);
double polar_volume_polytope(const Polytope& K, const SphericalQuadrature& Q);

enum class ConstantMode { calibrated, paper };

struct EnergyValue {
    double value = 0.0;
    double p = 0.0;
    double lambda = 0.0;
    int dim = 0;
    int quadrature_level = 0;
    double constant = 0.0;     // prefactor actually applied
    std::string constant_mode; // "calibrated" or "paper"
    double raw_functional = 0.0;  // (int E(v)^{-n/p} dv)^{-1/n}
};

// Affine energy Omega_{lambda,p}(f) = c * (int_{S^{n-1}} E(v)^{-n/p} dv)^{-1/n}
// with E(v) the one-sided directional energy. Exact per-simplex sums for pwa
// inputs; closed radial forms for radial inputs.
EnergyValue affine_energy(const PwaFunction& f, double lambda, double p,
                          const SphericalQuadrature& Q,
                          ConstantMode mode = ConstantMode::calibrated);
EnergyValue affine_energy(const RadialConvexFunction& g, double lambda, double p,
                          const SphericalQuadrature& Q,
                          ConstantMode mode = ConstantMode::calibrated);

}  // namespace lpb
