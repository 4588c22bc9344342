#include "lpbody/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdlib>
#include <cstdio>

#include "lpbody/hull.hpp"

namespace lpb {

std::string termination_name(Termination t) {
    switch (t) {
        case Termination::gradient: return "gradient";
        case Termination::residual: return "residual";
        case Termination::max_iters: return "max_iters";
    }
    return "?";
}

bool hemisphere_check(const DiscreteSphereMeasure& mu) {
    if (mu.empty()) throw EmptyMeasure("hemisphere check on empty measure");
    if (mu.dim == 2) {
        // Angular gap scan: contained in a closed hemisphere iff some gap
        // between consecutive atom angles reaches pi.
        std::vector<double> ang;
        ang.reserve(mu.atoms.size());
        for (const auto& a : mu.atoms) ang.push_back(std::atan2(a.u.y, a.u.x));
        std::sort(ang.begin(), ang.end());
        double max_gap = 2.0 * std::numbers::pi - (ang.back() - ang.front());
        for (size_t i = 1; i < ang.size(); ++i) max_gap = std::fmax(max_gap, ang[i] - ang[i - 1]);
        return max_gap < std::numbers::pi - 1e-12;
    }
    // 3D: not contained in a closed hemisphere iff the origin lies strictly
    // inside conv{u_j} (same feasibility question an LP would decide).
    if (mu.atoms.size() < 4) return false;
    std::vector<Vec> pts;
    pts.reserve(mu.atoms.size());
    for (const auto& a : mu.atoms) pts.push_back(a.u);
    std::vector<HullTri> tris;
    try {
        tris = hull3d(pts);
    } catch (const UnboundedBody&) {
        return false;  // degenerate point cloud: all atoms on a great circle or worse
    }
    for (const auto& t : tris) {
        Vec n = cross(pts[t.b] - pts[t.a], pts[t.c] - pts[t.a]);
        if (dot(n, pts[t.a]) <= 1e-12 * norm(n)) return false;
    }
    return true;
}

namespace {

// State of the scale-invariant objective J(s) = Phi / (n V)^{p/n}, h = exp(s).
struct Eval {
    double J = 0.0;
    double phi = 0.0;
    double volume = 0.0;
    std::vector<double> grad;      // dJ/ds
    std::vector<double> areas;
    std::vector<double> residual;  // c S_j / alpha_j - 1, c = phi/(nV)
    double max_residual = 0.0;
    int hidden = 0;                // facets with zero area
};

struct Problem {
    int n;
    double p;
    std::vector<Vec> normals;
    std::vector<double> alpha;

    Eval eval(const std::vector<double>& s) const {
        const size_t m = s.size();
        std::vector<double> h(m);
        for (size_t j = 0; j < m; ++j) h[j] = std::exp(s[j]);
        WulffData w = wulff_eval(n, normals, h, false);
        Eval e;
        e.areas = std::move(w.areas);
        e.volume = w.volume;
        for (size_t j = 0; j < m; ++j) e.phi += alpha[j] * std::pow(h[j], p);
        const double nv = n * e.volume;
        const double denom = std::pow(nv, p / n);
        e.J = e.phi / denom;
        const double c = e.phi / nv;
        e.grad.resize(m);
        e.residual.resize(m);
        for (size_t j = 0; j < m; ++j) {
            double hp1 = std::pow(h[j], p - 1.0);
            e.grad[j] = p * h[j] * (alpha[j] * hp1 - c * e.areas[j]) / denom;
            double sj = e.areas[j] * std::pow(h[j], 1.0 - p);
            e.residual[j] = c * sj / alpha[j] - 1.0;
            e.max_residual = std::fmax(e.max_residual, std::fabs(e.residual[j]));
            if (e.areas[j] == 0.0) e.hidden++;
        }
        return e;
    }
};

double max_abs(const std::vector<double>& v) {
    double r = 0.0;
    for (double x : v) r = std::fmax(r, std::fabs(x));
    return r;
}

// Solve (A + lam diag(A)) x = b in place; A symmetric positive semidefinite.
bool solve_damped(std::vector<std::vector<double>> A, std::vector<double> b, double lam,
                  std::vector<double>& x) {
    const size_t m = b.size();
    for (size_t i = 0; i < m; ++i) A[i][i] += lam * std::fmax(A[i][i], 1e-30);
    for (size_t col = 0; col < m; ++col) {
        size_t piv = col;
        for (size_t row = col + 1; row < m; ++row)
            if (std::fabs(A[row][col]) > std::fabs(A[piv][col])) piv = row;
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        if (std::fabs(A[col][col]) < 1e-300) return false;
        for (size_t row = col + 1; row < m; ++row) {
            double f = A[row][col] / A[col][col];
            for (size_t cc = col; cc < m; ++cc) A[row][cc] -= f * A[col][cc];
            b[row] -= f * b[col];
        }
    }
    x.assign(m, 0.0);
    for (size_t row = m; row-- > 0;) {
        double acc = b[row];
        for (size_t cc = row + 1; cc < m; ++cc) acc -= A[row][cc] * x[cc];
        x[row] = acc / A[row][row];
    }
    return true;
}

std::pair<Polytope, SolverTrace> solve_impl(const DiscreteSphereMeasure& mu,
                                            const SolverConfig& cfg, bool normalized) {
    if (!hemisphere_check(mu))
        throw HemisphereViolation("measure is contained in a closed hemisphere");
    const int n = mu.dim;
    const double p = cfg.p;
    if (!(p > 1.0)) throw InputError("solver requires p > 1");
    if (!normalized && std::fabs(p - n) < 1e-12)
        throw InputError("p == n requires the volume-normalized solver");

    const size_t m = mu.atoms.size();
    Problem prob{n, p, {}, {}};
    prob.normals.resize(m);
    prob.alpha.resize(m);
    for (size_t j = 0; j < m; ++j) {
        prob.normals[j] = mu.atoms[j].u;
        prob.alpha[j] = mu.atoms[j].w;
    }

    std::vector<double> s(m, 0.0);
    if (cfg.init_support) {
        if (cfg.init_support->size() != m) throw InputError("init_support size mismatch");
        for (size_t j = 0; j < m; ++j) {
            if (!((*cfg.init_support)[j] > 0.0)) throw InputError("init_support must be positive");
            s[j] = std::log((*cfg.init_support)[j]);
        }
    }

    Eval cur = prob.eval(s);
    SolverTrace trace;
    trace.objective.push_back(cur.J);
    trace.residual.push_back(cur.max_residual);
    trace.step.push_back(0.0);
    int it = 0;
    Termination why = Termination::max_iters;

    // Phase 1: monotone Barzilai-Borwein warmup. Handles the gross scale
    // mismatch from the flat start and keeps every facet exposed cheaply.
    {
        const int warmup = std::min(300, cfg.max_iters);
        std::vector<double> s_prev, g_prev;
        while (it < warmup && cur.max_residual > std::fmax(0.5, cfg.residual_tol)) {
            double gn = max_abs(cur.grad);
            if (gn <= cfg.grad_tol * std::fmax(cur.J, 1e-300)) break;
            double gamma = cfg.step_init / std::fmax(gn, 1e-300);
            if (!s_prev.empty()) {
                double sy = 0.0, ss = 0.0;
                for (size_t j = 0; j < m; ++j) {
                    double ds = s[j] - s_prev[j];
                    double dg = cur.grad[j] - g_prev[j];
                    sy += ds * dg;
                    ss += ds * ds;
                }
                if (sy > 0.0 && ss > 0.0)
                    gamma = std::clamp(ss / sy, 1e-12 / std::fmax(gn, 1e-300), 1e12);
            }
            double g2 = 0.0;
            for (double g : cur.grad) g2 += g * g;
            bool accepted = false;
            std::vector<double> s_new(m);
            Eval next;
            for (int bt = 0; bt < 60; ++bt) {
                for (size_t j = 0; j < m; ++j) s_new[j] = s[j] - gamma * cur.grad[j];
                next = prob.eval(s_new);
                if (next.J <= cur.J - 1e-4 * gamma * g2) {
                    accepted = true;
                    break;
                }
                gamma *= 0.5;
            }
            if (!accepted) break;
            s_prev = s;
            g_prev = cur.grad;
            s = s_new;
            cur = next;
            ++it;
            trace.objective.push_back(cur.J);
            trace.residual.push_back(cur.max_residual);
            trace.step.push_back(gamma);
        }
    }

    // Phase 2: damped Gauss-Newton / Levenberg-Marquardt on the residual
    // system r(s) = 0. The objective's floating-point noise floor stops any
    // monotone line search around 1e-7; the residuals stay well determined.
    auto norm2_of = [](const std::vector<double>& v) {
        double a = 0.0;
        for (double x : v) a += x * x;
        return std::sqrt(a);
    };
    double lam = 1e-3;
    const double fd = 1e-7;
    int stalls = 0;
    while (cur.max_residual > cfg.residual_tol && it < cfg.max_iters && stalls < 2) {
        // Finite-difference Jacobian of r, column by column.
        std::vector<std::vector<double>> Jac(m, std::vector<double>(m));
        for (size_t k = 0; k < m; ++k) {
            std::vector<double> sp = s;
            sp[k] += fd;
            Eval ek = prob.eval(sp);
            for (size_t j = 0; j < m; ++j) Jac[j][k] = (ek.residual[j] - cur.residual[j]) / fd;
        }
        // A hidden facet has r_j = -1 and a flat Jacobian row; substitute the
        // exposure direction (area grows as the halfspace moves inward) so
        // the step pulls it back.
        for (size_t j = 0; j < m; ++j) {
            if (cur.areas[j] == 0.0) {
                for (size_t k = 0; k < m; ++k) Jac[j][k] = 0.0;
                Jac[j][j] = -1.0;
            }
        }
        // Normal equations.
        std::vector<std::vector<double>> JtJ(m, std::vector<double>(m, 0.0));
        std::vector<double> Jtr(m, 0.0);
        for (size_t j = 0; j < m; ++j)
            for (size_t k = j; k < m; ++k) {
                double a = 0.0;
                for (size_t r = 0; r < m; ++r) a += Jac[r][j] * Jac[r][k];
                JtJ[j][k] = JtJ[k][j] = a;
            }
        for (size_t j = 0; j < m; ++j) {
            double a = 0.0;
            for (size_t r = 0; r < m; ++r) a += Jac[r][j] * cur.residual[r];
            Jtr[j] = a;
        }

        const double cur_norm = norm2_of(cur.residual);
        bool accepted = false;
        for (int tries = 0; tries < 20 && !accepted; ++tries) {
            std::vector<double> ds;
            if (!solve_damped(JtJ, Jtr, lam, ds)) {
                lam *= 8.0;
                continue;
            }
            // Trust-region style cap on the log-coordinate move.
            double dmax = max_abs(ds);
            if (dmax > 2.0) {
                double sc = 2.0 / dmax;
                for (double& d : ds) d *= sc;
            }
            std::vector<double> s_try(m);
            for (size_t j = 0; j < m; ++j) s_try[j] = s[j] - ds[j];
            Eval next = prob.eval(s_try);
            if (norm2_of(next.residual) < cur_norm * (1.0 - 1e-6)) {
                s = std::move(s_try);
                cur = std::move(next);
                ++it;
                trace.objective.push_back(cur.J);
                trace.residual.push_back(cur.max_residual);
                trace.step.push_back(1.0);
                lam = std::fmax(lam * 0.33, 1e-14);
                accepted = true;
            } else {
                lam *= 8.0;
            }
        }
        if (!accepted)
            ++stalls;
        else
            stalls = 0;
    }

    if (cur.max_residual <= cfg.residual_tol) {
        double gn = max_abs(cur.grad);
        why = (gn <= cfg.grad_tol * std::fmax(cur.J, 1e-300)) ? Termination::gradient
                                                              : Termination::residual;
    } else if (it >= cfg.max_iters) {
        why = Termination::max_iters;
    } else {
        why = Termination::gradient;  // stalled: no descent direction left
    }

    trace.iterations = it;
    trace.final_residual = cur.max_residual;
    trace.terminated_by = why;

    if (cur.max_residual > cfg.residual_tol) {
        throw SolverNotConverged("minkowski solver stalled at residual " +
                                     std::to_string(cur.max_residual) + " after " +
                                     std::to_string(it) + " iterations (" +
                                     termination_name(why) + ")",
                                 trace);
    }

    if (std::getenv("LPB_SOLVER_DEBUG")) {
        for (size_t j = 0; j < m; ++j)
            std::fprintf(stderr, "TERM j=%zu h=%.12g area=%.12g resid=%.3g\n", j,
                         std::exp(s[j]), cur.areas[j], cur.residual[j]);
    }
    // Rescale the critical point so the measure equation holds exactly.
    const double c = cur.phi / (n * cur.volume);
    double t;
    if (normalized) {
        t = std::pow(static_cast<double>(n) / cur.phi, 1.0 / n);
    } else {
        t = std::pow(c, 1.0 / (n - p));
    }
    std::vector<double> h_final(m);
    for (size_t j = 0; j < m; ++j) h_final[j] = t * std::exp(s[j]);
    if (std::getenv("LPB_SOLVER_DEBUG")) {
        std::fprintf(stderr, "t=%.17g c=%.17g\n", t, c);
        for (size_t j = 0; j < m; ++j) std::fprintf(stderr, "FINAL j=%zu h=%.17g\n", j, h_final[j]);
    }

    Polytope P = canonicalize(n, prob.normals, h_final);
    return {std::move(P), std::move(trace)};
}

}  // namespace

std::pair<Polytope, SolverTrace> solve(const DiscreteSphereMeasure& mu, const SolverConfig& cfg) {
    return solve_impl(mu, cfg, false);
}

std::pair<Polytope, SolverTrace> solve_normalized(const DiscreteSphereMeasure& mu,
                                                  SolverConfig cfg) {
    cfg.p = static_cast<double>(mu.dim);
    return solve_impl(mu, cfg, true);
}

Polytope blaschke_sum(const Polytope& K, const Polytope& L, double p, const SolverConfig& cfg0) {
    if (K.dim != L.dim) throw DimensionMismatch("blaschke sum dimension mismatch");
    SolverConfig cfg = cfg0;
    cfg.p = p;
    DiscreteSphereMeasure mu =
        DiscreteSphereMeasure::sum(lp_surface_measure(K, p), lp_surface_measure(L, p));
    return solve(mu, cfg).first;
}

}  // namespace lpb
