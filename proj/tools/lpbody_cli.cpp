#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lpbody/io.hpp"

namespace {

using lpb::io::json;

// Exit codes: 0 ok, 1 check failure, 2 input error, 3 solver non-convergence.
int exit_code_for(const lpb::Error& e) {
    if (e.kind() == "not_converged") return 3;
    return 2;
}

void print_error(const lpb::Error& e) {
    json j;
    j["error"] = e.kind();
    j["message"] = e.what();
    std::cerr << j.dump() << std::endl;
}

lpb::SolverConfig solver_config_from_env() {
    lpb::SolverConfig cfg;
    if (const char* s = std::getenv("LPBODY_MAX_ITERS")) cfg.max_iters = std::atoi(s);
    if (const char* s = std::getenv("LPBODY_RESIDUAL_TOL")) cfg.residual_tol = std::atof(s);
    if (const char* s = std::getenv("LPBODY_GRAD_TOL")) cfg.grad_tol = std::atof(s);
    return cfg;
}

int default_quad_level(int dim) {
    if (const char* s = std::getenv("LPBODY_QUAD_LEVEL")) return std::atoi(s);
    return dim == 2 ? 4 : 3;
}

lpb::CorpusSpec default_suite_spec() {
    lpb::CorpusSpec spec;
    spec.dim = 2;
    spec.count = 24;
    spec.seed = 20260810;
    spec.generator = "random-pwa";
    return spec;
}

int run_check_by_name(const std::string& name, const std::string& k_path,
                      const std::string& l_path, const std::string& fn_path,
                      const std::string& g_path, double p, double lambda, int level,
                      const std::string& out_path) {
    int dim = 0;
    std::optional<lpb::Polytope> K, L;
    std::optional<lpb::PwaFunction> f, g;
    if (!k_path.empty()) K = lpb::io::polytope_from_json(lpb::io::load_file(k_path));
    if (!l_path.empty()) L = lpb::io::polytope_from_json(lpb::io::load_file(l_path));
    if (!fn_path.empty()) f = lpb::io::pwa_from_json(lpb::io::load_file(fn_path));
    if (!g_path.empty()) g = lpb::io::pwa_from_json(lpb::io::load_file(g_path));
    if (K) dim = K->dim;
    if (f) dim = f->dim;
    if (dim == 0) throw lpb::InputError("check inputs missing: provide --k or --fn");
    if (level < 0) level = default_quad_level(dim);

    lpb::CheckResult r;
    if (name == "minkowski") {
        if (!K || !L) throw lpb::InputError("minkowski check needs --k and --l");
        r = lpb::check_minkowski_ineq(*K, *L, p);
    } else if (name == "petty") {
        if (!K) throw lpb::InputError("petty check needs --k");
        r = lpb::check_petty(*K, p, lambda, lpb::build_quadrature(dim, level));
    } else if (name == "sobolev-body") {
        if (!f) throw lpb::InputError("sobolev-body check needs --fn");
        r = lpb::check_sobolev_body_ineq(*f, p);
    } else if (name == "general-affine-sobolev") {
        if (!f) throw lpb::InputError("general-affine-sobolev check needs --fn");
        r = lpb::check_general_affine_sobolev(*f, p, lambda, lpb::build_quadrature(dim, level));
    } else if (name == "polya-szego") {
        if (!f) throw lpb::InputError("polya-szego check needs --fn");
        r = lpb::check_polya_szego(*f, p, lambda, lpb::build_quadrature(dim, level));
    } else if (name == "valuation") {
        if (!f || !g) throw lpb::InputError("valuation check needs --fn and --g");
        r = lpb::check_valuation(*f, *g, p);
    } else if (name == "morrey") {
        if (!f) throw lpb::InputError("morrey check needs --fn");
        r = lpb::check_morrey(*f, p, lambda, lpb::build_quadrature(dim, level));
    } else if (name == "moser-trudinger") {
        if (!f) throw lpb::InputError("moser-trudinger report needs --fn");
        r = lpb::report_moser_trudinger(*f, lambda, lpb::build_quadrature(dim, level));
    } else {
        throw lpb::InputError("unknown check: " + name);
    }
    json out = lpb::io::to_json(r);
    if (out_path.empty())
        std::cout << out.dump(2) << std::endl;
    else
        lpb::io::save_file(out_path, out);
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.check << " ratio=" << r.ratio << std::endl;
    return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lpbody: discrete L_p Minkowski problems, optimal Sobolev bodies, projection "
                 "bodies, and affine inequality verification (n = 2, 3)"};
    app.require_subcommand(1);

    // solve-minkowski
    auto* solve_cmd = app.add_subcommand("solve-minkowski", "solve S_p(P,.) = mu for P");
    std::string measure_path, poly_out, trace_out;
    double p_solve = 2.0;
    bool normalized = false;
    solve_cmd->add_option("--measure", measure_path, "measure JSON")->required();
    solve_cmd->add_option("--p", p_solve, "exponent p > 1");
    solve_cmd->add_flag("--normalized", normalized, "solve S_n(P,.)/|P| = mu (p = dim)");
    solve_cmd->add_option("--out", poly_out, "output polytope JSON")->required();
    solve_cmd->add_option("--trace", trace_out, "iteration trace CSV");

    // sobolev-body
    auto* body_cmd = app.add_subcommand("sobolev-body", "optimal Sobolev body of a pwa function");
    std::string fn_path, body_out, body_trace;
    double p_body = 2.0;
    bool body_normalized = false;
    body_cmd->add_option("--fn", fn_path, "pwa function JSON")->required();
    body_cmd->add_option("--p", p_body, "exponent p > 1, p != dim");
    body_cmd->add_flag("--normalized", body_normalized, "volume-normalized body (p = dim)");
    body_cmd->add_option("--out", body_out, "output polytope JSON")->required();
    body_cmd->add_option("--trace", body_trace, "iteration trace CSV");

    // affine-energy
    auto* energy_cmd = app.add_subcommand("affine-energy", "affine energy of a pwa function");
    std::string energy_fn, energy_out, const_mode = "calibrated";
    double energy_lambda = 0.5, energy_p = 2.0;
    int energy_level = -1;
    energy_cmd->add_option("--fn", energy_fn, "pwa function JSON")->required();
    energy_cmd->add_option("--lambda", energy_lambda, "asymmetry weight in [0,1]");
    energy_cmd->add_option("--p", energy_p, "exponent p > 1");
    energy_cmd->add_option("--level", energy_level, "quadrature level");
    energy_cmd->add_option("--const-mode", const_mode, "calibrated | paper");
    energy_cmd->add_option("--out", energy_out, "report JSON");

    // symmetrize
    auto* sym_cmd = app.add_subcommand("symmetrize", "convex symmetrization f^K / f^star");
    std::string sym_fn, sym_shape, sym_out, sym_profile;
    int sym_grid = 1024;
    sym_cmd->add_option("--fn", sym_fn, "pwa function JSON")->required();
    sym_cmd->add_option("--shape", sym_shape, "polytope JSON path, or \"ball\" (default)");
    sym_cmd->add_option("--grid", sym_grid, "profile grid size (>= 64)");
    sym_cmd->add_option("--out", sym_out, "radial function JSON")->required();
    sym_cmd->add_option("--profile-csv", sym_profile, "profile CSV (s, f_star, slope)");

    // check
    auto* check_cmd = app.add_subcommand("check", "run one inequality/identity check");
    std::string check_name, check_k, check_l, check_fn, check_g, check_out;
    double check_p = 2.0, check_lambda = 0.5;
    int check_level = -1;
    check_cmd->add_option("--name", check_name, "check name")->required();
    check_cmd->add_option("--k", check_k, "polytope JSON");
    check_cmd->add_option("--l", check_l, "second polytope JSON");
    check_cmd->add_option("--fn", check_fn, "pwa function JSON");
    check_cmd->add_option("--g", check_g, "second pwa function JSON");
    check_cmd->add_option("--p", check_p, "exponent");
    check_cmd->add_option("--lambda", check_lambda, "asymmetry weight");
    check_cmd->add_option("--level", check_level, "quadrature level");
    check_cmd->add_option("--out", check_out, "result JSON");

    // suite
    auto* suite_cmd = app.add_subcommand("suite", "run a verification corpus");
    std::string suite_spec = "default", suite_out, suite_csv;
    int suite_jobs = 0;
    suite_cmd->add_option("--spec", suite_spec, "corpus spec JSON, or \"default\"");
    suite_cmd->add_option("--out", suite_out, "report JSON");
    suite_cmd->add_option("--csv", suite_csv, "flat report CSV");
    suite_cmd->add_option("--jobs", suite_jobs, "worker threads");

    // export-plot
    auto* plot_cmd = app.add_subcommand("export-plot", "flatten a report to plot-ready CSV");
    std::string plot_report, plot_out;
    plot_cmd->add_option("--report", plot_report, "report JSON from suite")->required();
    plot_cmd->add_option("--out", plot_out, "CSV output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*solve_cmd) {
            lpb::DiscreteSphereMeasure mu =
                lpb::io::measure_from_json(lpb::io::load_file(measure_path));
            lpb::SolverConfig cfg = solver_config_from_env();
            cfg.p = p_solve;
            auto [P, trace] =
                normalized ? lpb::solve_normalized(mu, cfg) : lpb::solve(mu, cfg);
            lpb::io::save_file(poly_out, lpb::io::to_json(P));
            if (!trace_out.empty()) lpb::io::save_text(trace_out, lpb::io::trace_csv(trace));
            std::cout << "solved: " << P.facet_count() << " facets, volume " << P.volume
                      << ", residual " << trace.final_residual << " ("
                      << lpb::termination_name(trace.terminated_by) << ")" << std::endl;
        } else if (*body_cmd) {
            lpb::PwaFunction f = lpb::io::pwa_from_json(lpb::io::load_file(fn_path));
            lpb::SolverConfig cfg = solver_config_from_env();
            lpb::Polytope P;
            lpb::SolverTrace trace;
            if (body_normalized) {
                lpb::DiscreteSphereMeasure mu = lpb::gradient_measure(f, f.dim);
                for (auto& a : mu.atoms) a.w /= f.dim;
                std::tie(P, trace) = lpb::solve_normalized(mu, cfg);
            } else {
                cfg.p = p_body;
                std::tie(P, trace) = lpb::solve(lpb::gradient_measure(f, p_body), cfg);
            }
            lpb::io::save_file(body_out, lpb::io::to_json(P));
            if (!body_trace.empty()) lpb::io::save_text(body_trace, lpb::io::trace_csv(trace));
            std::cout << "body: " << P.facet_count() << " facets, volume " << P.volume
                      << std::endl;
        } else if (*energy_cmd) {
            lpb::PwaFunction f = lpb::io::pwa_from_json(lpb::io::load_file(energy_fn));
            if (energy_level < 0) energy_level = default_quad_level(f.dim);
            lpb::ConstantMode mode = const_mode == "paper" ? lpb::ConstantMode::paper
                                                           : lpb::ConstantMode::calibrated;
            if (const_mode != "paper" && const_mode != "calibrated")
                throw lpb::InputError("const-mode must be calibrated or paper");
            lpb::EnergyValue ev = lpb::affine_energy(
                f, energy_lambda, energy_p, lpb::build_quadrature(f.dim, energy_level), mode);
            lpb::EnergyValue coarse = lpb::affine_energy(
                f, energy_lambda, energy_p,
                lpb::build_quadrature(f.dim, std::max(0, energy_level - 1)), mode);
            json out;
            out["value"] = ev.value;
            out["constant"] = ev.constant;
            out["constant_mode"] = ev.constant_mode;
            out["raw_functional"] = ev.raw_functional;
            out["p"] = ev.p;
            out["lambda"] = ev.lambda;
            out["quadrature_level"] = ev.quadrature_level;
            out["convergence_delta"] = std::fabs(ev.value - coarse.value);
            if (energy_out.empty())
                std::cout << out.dump(2) << std::endl;
            else
                lpb::io::save_file(energy_out, out);
        } else if (*sym_cmd) {
            lpb::PwaFunction f = lpb::io::pwa_from_json(lpb::io::load_file(sym_fn));
            lpb::RadialConvexFunction g;
            if (sym_shape.empty() || sym_shape == "ball") {
                g = lpb::symmetric_rearrangement(f, sym_grid);
            } else {
                lpb::Polytope K = lpb::io::polytope_from_json(lpb::io::load_file(sym_shape));
                g = lpb::convex_symmetrization(f, K, sym_grid);
            }
            lpb::io::save_file(sym_out, lpb::io::to_json(g));
            if (!sym_profile.empty())
                lpb::io::save_text(sym_profile, lpb::io::profile_csv(g.profile));
            std::cout << "symmetrized: support measure " << g.profile.support_measure()
                      << ", max " << (g.profile.value.empty() ? 0.0 : g.profile.value.front())
                      << std::endl;
        } else if (*check_cmd) {
            return run_check_by_name(check_name, check_k, check_l, check_fn, check_g, check_p,
                                     check_lambda, check_level, check_out);
        } else if (*suite_cmd) {
            lpb::CorpusSpec spec;
            if (suite_spec == "default")
                spec = default_suite_spec();
            else
                spec = lpb::io::corpus_spec_from_json(lpb::io::load_file(suite_spec));
            if (suite_jobs > 0) spec.jobs = suite_jobs;
            std::vector<lpb::CheckResult> results = lpb::run_suite(spec);
            json report = lpb::io::report_json(results);
            if (!suite_out.empty()) lpb::io::save_file(suite_out, report);
            if (!suite_csv.empty()) lpb::io::save_text(suite_csv, lpb::io::report_csv(results));
            for (const auto& r : results) {
                std::cout << (r.error.empty() ? (r.pass ? "[PASS] " : "[FAIL] ") : "[ERR ] ")
                          << r.check << ' ' << r.digest;
                if (r.error.empty())
                    std::cout << " ratio=" << r.ratio;
                else
                    std::cout << ' ' << r.error;
                std::cout << '\n';
            }
            std::cout << report["summary"].dump() << std::endl;
            return lpb::has_violation(results) ? 1 : 0;
        } else if (*plot_cmd) {
            json report = lpb::io::load_file(plot_report);
            if (!report.contains("results")) throw lpb::InputError("not a suite report");
            std::ostringstream os;
            os.precision(17);
            os << "check,digest,ratio,lhs,rhs,pass\n";
            for (const auto& r : report["results"]) {
                if (r.contains("error")) continue;
                os << r["check"].get<std::string>() << ',' << r["digest"].get<std::string>()
                   << ',' << r["ratio"].get<double>() << ',' << r["lhs"].get<double>() << ','
                   << r["rhs"].get<double>() << ',' << (r["pass"].get<bool>() ? 1 : 0) << '\n';
            }
            lpb::io::save_text(plot_out, os.str());
            std::cout << "wrote " << plot_out << std::endl;
        }
    } catch (const lpb::Error& e) {
        print_error(e);
        return exit_code_for(e);
    } catch (const std::exception& e) {
        json j;
        j["error"] = "internal";
        j["message"] = e.what();
        std::cerr << j.dump() << std::endl;
        return 2;
    }
    return 0;
}
