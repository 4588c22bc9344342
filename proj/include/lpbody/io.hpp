#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lpbody/harness.hpp"
#include "lpbody/rearrangement.hpp"
#include "lpbody/solver.hpp"

namespace lpb::io {

using nlohmann::json;

// JSON schemas (normals/directions need not be unit on input):
//   polytope: {"dim": 2|3, "normals": [[f64,...]], "offsets": [f64,...]}
//   measure:  {"dim": n, "atoms": [{"u": [...], "w": f64}]}
//   pwa:      {"dim": n, "vertices": [[...]], "simplices": [[i,j,k(,l)]], "values": [...]}
//   radial:   {"dim": n, "shape": <polytope>|"ball", "profile": [[s, v], ...]}

json to_json(const Polytope& P);
Polytope polytope_from_json(const json& j);

json to_json(const DiscreteSphereMeasure& mu);
DiscreteSphereMeasure measure_from_json(const json& j);

json to_json(const PwaFunction& f);
PwaFunction pwa_from_json(const json& j);

json to_json(const RadialConvexFunction& g);
RadialConvexFunction radial_from_json(const json& j);

json to_json(const CheckResult& r);
json report_json(const std::vector<CheckResult>& results);
std::string report_csv(const std::vector<CheckResult>& results);

CorpusSpec corpus_spec_from_json(const json& j);

std::string trace_csv(const SolverTrace& trace);
std::string profile_csv(const RadialProfile& prof);

json load_file(const std::string& path);
void save_file(const std::string& path, const json& j);
void save_text(const std::string& path, const std::string& text);

}  // namespace lpb::io
