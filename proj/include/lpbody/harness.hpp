#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lpbody/projection.hpp"

namespace lpb {

struct CheckResult {
    std::string check;
    std::string digest;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool pass = false;
    double tolerance = 0.0;
    double runtime_ms = 0.0;
    bool equality_case = false;
    bool report_only = false;                          // Moser-Trudinger style entries
    std::string error;                                 // nonempty when the check errored
    std::vector<std::pair<std::string, double>> extra; // e.g. both constant modes
};

struct CorpusSpec {
    int dim = 2;
    int count = 20;
    std::uint64_t seed = 20260810;
    std::string generator = "random-pwa";  // random-polytope | random-pwa | cone-family | radial-family
    std::vector<double> p_values = {1.5, 2.0, 2.5, 3.0, 4.0};
    std::vector<double> lambda_values = {0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<std::string> checks = {"minkowski", "petty",          "valuation",
                                       "sobolev-body", "general-affine-sobolev",
                                       "polya-szego",  "morrey",      "moser-trudinger"};
    int quad_level = -1;  // -1: default per dimension (2D: 4, 3D: 3)
    int jobs = 1;
};

// --- seeded generators -------------------------------------------------------

using Rng = std::mt19937_64;

Vec random_direction(Rng& rng, int dim);
Polytope random_polytope(Rng& rng, int dim);
PwaFunction random_pwa(Rng& rng, int dim, int grid = 0);  // 0: default per dim
Mat random_sl2(Rng& rng);

// Circumscribed ball proxy: 2D regular m-gon (m = 2^(level+6)), 3D polytope
// tangent at the level-subdivided icosahedron directions.
Polytope ball_proxy(int dim, int level);

// --- individual checks -------------------------------------------------------

CheckResult check_minkowski_ineq(const Polytope& K, const Polytope& L, double p);
CheckResult check_petty(const Polytope& K, double p, double lambda, const SphericalQuadrature& Q);
CheckResult check_sobolev_body_ineq(const PwaFunction& f, double p);
CheckResult check_general_affine_sobolev(const PwaFunction& f, double p, double lambda,
                                         const SphericalQuadrature& Q);
CheckResult check_polya_szego(const PwaFunction& f, double p, double lambda,
                              const SphericalQuadrature& Q);
CheckResult check_valuation(const PwaFunction& f, const PwaFunction& g, double p);
CheckResult check_morrey(const PwaFunction& f, double p, double lambda,
                         const SphericalQuadrature& Q);
CheckResult report_moser_trudinger(const PwaFunction& f, double lambda,
                                   const SphericalQuadrature& Q);

// Reference value |B|^{n/p-1} |Phi°_{l,p} B| (or the Lemma-7 ratio at p = n)
// computed on the discretized ball; cached per (dim, p, lambda, level).
double petty_ball_reference(int dim, double p, double lambda, const SphericalQuadrature& Q);

// --- suite -------------------------------------------------------------------

std::vector<CheckResult> run_suite(const CorpusSpec& spec);

// True when the result set contains a theorem-backed violation.
bool has_violation(const std::vector<CheckResult>& results);

std::string fingerprint(const std::string& tag, const std::vector<double>& data);

}  // namespace lpb
