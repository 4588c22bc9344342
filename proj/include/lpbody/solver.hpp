#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lpbody/geometry.hpp"

namespace lpb {

struct SolverConfig {
    double p = 2.0;                 // p > 1
    int max_iters = 5000;
    double grad_tol = 1e-10;        // on the scale-invariant objective gradient
    double residual_tol = 1e-8;     // relative per-atom measure residual
    double step_init = 1.0;         // backtracking: halve until Armijo 1e-4 holds
    std::optional<std::vector<double>> init_support;  // default: all ones
};

enum class Termination { gradient, residual, max_iters };

struct SolverTrace {
    int iterations = 0;
    std::vector<double> objective;  // non-increasing across accepted steps
    std::vector<double> residual;
    std::vector<double> step;
    double final_residual = 0.0;
    Termination terminated_by = Termination::max_iters;
};

// NotConverged variant carrying the iteration trace.
class SolverNotConverged : public NotConverged {
public:
    SolverNotConverged(const std::string& msg, SolverTrace t)
        : NotConverged(msg), trace(std::move(t)) {}
    SolverTrace trace;
};

// True iff the atoms are NOT contained in any closed hemisphere.
bool hemisphere_check(const DiscreteSphereMeasure& mu);

// Discrete L_p Minkowski problem, p > 1 and p != n: returns the unique
// polytope with S_p(P, .) matching mu atom by atom.
std::pair<Polytope, SolverTrace> solve(const DiscreteSphereMeasure& mu, const SolverConfig& cfg);

// Volume-normalized problem (p = n): S_n(P, .) / |P| = mu.
std::pair<Polytope, SolverTrace> solve_normalized(const DiscreteSphereMeasure& mu,
                                                  SolverConfig cfg = {});

// L_p Blaschke sum: S_p(K # L) = S_p(K) + S_p(L).
Polytope blaschke_sum(const Polytope& K, const Polytope& L, double p,
                      const SolverConfig& cfg = {});

std::string termination_name(Termination t);

}  // namespace lpb
