#include "lpbody/io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace lpb::io {

namespace {

json vec_json(const Vec& v, int dim) {
    json a = json::array();
    a.push_back(v.x);
    a.push_back(v.y);
    if (dim == 3) a.push_back(v.z);
    return a;
}

Vec vec_from(const json& a, int dim, const char* what) {
    if (!a.is_array() || static_cast<int>(a.size()) != dim)
        throw InputError(std::string(what) + ": expected an array of length " +
                         std::to_string(dim));
    Vec v;
    v.x = a[0].get<double>();
    v.y = a[1].get<double>();
    v.z = dim == 3 ? a[2].get<double>() : 0.0;
    return v;
}

int dim_from(const json& j) {
    if (!j.contains("dim")) throw InputError("missing \"dim\"");
    int dim = j.at("dim").get<int>();
    if (dim != 2 && dim != 3) throw InputError("dim must be 2 or 3");
    return dim;
}

}  // namespace

json to_json(const Polytope& P) {
    json j;
    j["dim"] = P.dim;
    json normals = json::array(), offsets = json::array();
    for (size_t i = 0; i < P.normals.size(); ++i) {
        normals.push_back(vec_json(P.normals[i], P.dim));
        offsets.push_back(P.offsets[i]);
    }
    j["normals"] = std::move(normals);
    j["offsets"] = std::move(offsets);
    return j;
}

Polytope polytope_from_json(const json& j) {
    int dim = dim_from(j);
    if (!j.contains("normals") || !j.contains("offsets"))
        throw InputError("polytope needs \"normals\" and \"offsets\"");
    const auto& jn = j.at("normals");
    const auto& jo = j.at("offsets");
    if (jn.size() != jo.size()) throw InputError("normals/offsets length mismatch");
    std::vector<Vec> normals;
    std::vector<double> offsets;
    for (size_t i = 0; i < jn.size(); ++i) {
        normals.push_back(vec_from(jn[i], dim, "normal"));
        offsets.push_back(jo[i].get<double>());
    }
    return canonicalize(dim, std::move(normals), std::move(offsets));
}

json to_json(const DiscreteSphereMeasure& mu) {
    json j;
    j["dim"] = mu.dim;
    json atoms = json::array();
    for (const auto& a : mu.atoms) {
        json ja;
        ja["u"] = vec_json(a.u, mu.dim);
        ja["w"] = a.w;
        atoms.push_back(std::move(ja));
    }
    j["atoms"] = std::move(atoms);
    return j;
}

DiscreteSphereMeasure measure_from_json(const json& j) {
    int dim = dim_from(j);
    if (!j.contains("atoms")) throw InputError("measure needs \"atoms\"");
    std::vector<Atom> atoms;
    for (const auto& ja : j.at("atoms"))
        atoms.push_back({vec_from(ja.at("u"), dim, "atom direction"), ja.at("w").get<double>()});
    return DiscreteSphereMeasure::make(dim, std::move(atoms));
}

json to_json(const PwaFunction& f) {
    json j;
    j["dim"] = f.dim;
    json verts = json::array(), simps = json::array(), vals = json::array();
    for (const auto& v : f.vertices) verts.push_back(vec_json(v, f.dim));
    for (const auto& s : f.simplices) {
        json js = json::array();
        for (int k = 0; k <= f.dim; ++k) js.push_back(s[k]);
        simps.push_back(std::move(js));
    }
    for (double v : f.values) vals.push_back(v);
    j["vertices"] = std::move(verts);
    j["simplices"] = std::move(simps);
    j["values"] = std::move(vals);
    return j;
}

PwaFunction pwa_from_json(const json& j) {
    int dim = dim_from(j);
    for (const char* key : {"vertices", "simplices", "values"})
        if (!j.contains(key)) throw InputError(std::string("pwa function needs \"") + key + "\"");
    std::vector<Vec> verts;
    for (const auto& jv : j.at("vertices")) verts.push_back(vec_from(jv, dim, "vertex"));
    std::vector<std::array<int, 4>> simps;
    for (const auto& js : j.at("simplices")) {
        if (static_cast<int>(js.size()) != dim + 1)
            throw InputError("simplex needs " + std::to_string(dim + 1) + " vertex indices");
        std::array<int, 4> s = {-1, -1, -1, -1};
        for (int k = 0; k <= dim; ++k) s[k] = js[k].get<int>();
        simps.push_back(s);
    }
    std::vector<double> vals;
    for (const auto& jv : j.at("values")) vals.push_back(jv.get<double>());
    // Loader path: audit disjointness and enforce the boundary-zero invariant.
    return PwaFunction::make(dim, std::move(verts), std::move(simps), std::move(vals),
                             /*audit=*/true, /*boundary_zero=*/true);
}

json to_json(const RadialConvexFunction& g) {
    json j;
    j["dim"] = g.dim;
    if (g.ball)
        j["shape"] = "ball";
    else
        j["shape"] = to_json(*g.shape);
    json prof = json::array();
    for (size_t k = 0; k < g.profile.s.size(); ++k) {
        json row = json::array();
        row.push_back(g.profile.s[k]);
        row.push_back(g.profile.value[k]);
        prof.push_back(std::move(row));
    }
    j["profile"] = std::move(prof);
    return j;
}

RadialConvexFunction radial_from_json(const json& j) {
    RadialConvexFunction g;
    g.dim = dim_from(j);
    if (!j.contains("shape") || !j.contains("profile"))
        throw InputError("radial function needs \"shape\" and \"profile\"");
    if (j.at("shape").is_string()) {
        if (j.at("shape").get<std::string>() != "ball")
            throw InputError("shape must be a polytope object or \"ball\"");
        g.ball = true;
    } else {
        g.ball = false;
        g.shape = polytope_from_json(j.at("shape"));
        double omega = unit_ball_volume(g.dim);
        if (std::fabs(g.shape->volume - omega) > 1e-9 * omega)
            throw InputError("radial shape must be normalized to the unit-ball volume");
    }
    auto& prof = g.profile;
    for (const auto& row : j.at("profile")) {
        prof.s.push_back(row[0].get<double>());
        prof.value.push_back(row[1].get<double>());
    }
    if (prof.s.size() < 2) throw InputError("profile needs at least two samples");
    for (size_t k = 0; k + 1 < prof.s.size(); ++k) {
        if (!(prof.s[k + 1] > prof.s[k])) throw InputError("profile grid must increase");
        if (prof.value[k + 1] > prof.value[k] + 1e-12 * std::fabs(prof.value.front()))
            throw InputError("profile values must be non-increasing");
        prof.slope.push_back((prof.value[k + 1] - prof.value[k]) / (prof.s[k + 1] - prof.s[k]));
    }
    return g;
}

json to_json(const CheckResult& r) {
    json j;
    j["check"] = r.check;
    j["digest"] = r.digest;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["ratio"] = r.ratio;
    j["pass"] = r.pass;
    j["tolerance"] = r.tolerance;
    j["runtime_ms"] = r.runtime_ms;
    j["equality_case"] = r.equality_case;
    if (r.report_only) j["report_only"] = true;
    if (!r.error.empty()) j["error"] = r.error;
    for (const auto& [k, v] : r.extra) j[k] = v;
    return j;
}

json report_json(const std::vector<CheckResult>& results) {
    json j;
    json arr = json::array();
    std::map<std::string, std::pair<int, int>> tally;  // check -> (pass, total)
    int errors = 0;
    for (const auto& r : results) {
        arr.push_back(to_json(r));
        if (!r.error.empty()) {
            ++errors;
            continue;
        }
        if (r.report_only) continue;
        auto& t = tally[r.check];
        t.second++;
        if (r.pass) t.first++;
    }
    json summary;
    for (const auto& [name, t] : tally) {
        summary[name] = {{"pass", t.first}, {"total", t.second}};
    }
    summary["errors"] = errors;
    summary["violations"] = has_violation(results);
    j["summary"] = std::move(summary);
    j["results"] = std::move(arr);
    return j;
}

std::string report_csv(const std::vector<CheckResult>& results) {
    std::ostringstream os;
    os.precision(17);
    os << "check,digest,lhs,rhs,ratio,pass\n";
    for (const auto& r : results) {
        os << r.check << ',' << r.digest << ',' << r.lhs << ',' << r.rhs << ',' << r.ratio << ','
           << (r.pass ? 1 : 0) << '\n';
    }
    return os.str();
}

CorpusSpec corpus_spec_from_json(const json& j) {
    CorpusSpec spec;
    if (j.contains("dim")) spec.dim = j.at("dim").get<int>();
    if (j.contains("count")) spec.count = j.at("count").get<int>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("generator")) spec.generator = j.at("generator").get<std::string>();
    if (j.contains("p")) spec.p_values = j.at("p").get<std::vector<double>>();
    if (j.contains("lambda")) spec.lambda_values = j.at("lambda").get<std::vector<double>>();
    if (j.contains("checks")) spec.checks = j.at("checks").get<std::vector<std::string>>();
    if (j.contains("quad_level")) spec.quad_level = j.at("quad_level").get<int>();
    if (j.contains("jobs")) spec.jobs = j.at("jobs").get<int>();
    if (spec.dim != 2 && spec.dim != 3) throw InputError("suite dim must be 2 or 3");
    if (spec.count < 0) throw InputError("suite count must be nonnegative");
    return spec;
}

std::string trace_csv(const SolverTrace& trace) {
    std::ostringstream os;
    os.precision(17);
    os << "iter,objective,residual,step\n";
    for (size_t i = 0; i < trace.objective.size(); ++i)
        os << i << ',' << trace.objective[i] << ',' << trace.residual[i] << ',' << trace.step[i]
           << '\n';
    return os.str();
}

std::string profile_csv(const RadialProfile& prof) {
    std::ostringstream os;
    os.precision(17);
    os << "s,f_star,slope\n";
    for (size_t k = 0; k < prof.s.size(); ++k) {
        double slope = k < prof.slope.size() ? prof.slope[k] : 0.0;
        os << prof.s[k] << ',' << prof.value[k] << ',' << slope << '\n';
    }
    return os.str();
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void save_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    out << text;
}

}  // namespace lpb::io
