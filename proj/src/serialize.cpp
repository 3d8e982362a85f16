// Copyright 2026 The hilbertpairs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hilbertpairs/serialize.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hp {

Json matrix_to_json(const Mat& m) {
  Json re = Json::array(), im = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json r = Json::array(), c = Json::array();
    for (int j = 0; j < m.cols(); ++j) {
      r.push_back(m(i, j).real());
      c.push_back(m(i, j).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  return Json{{"re", re}, {"im", im}};
}

Mat matrix_from_json(const Json& j) {
  if (!j.contains("re") || !j["re"].is_array()) throw std::invalid_argument("matrix: missing \"re\" rows");
  const Json& re = j["re"];
  bool has_im = j.contains("im");
  if (has_im && j["im"].size() != re.size()) throw std::invalid_argument("matrix: re/im row count mismatch");
  int rows = static_cast<int>(re.size());
  int cols = rows ? static_cast<int>(re[0].size()) : 0;
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(re[i].size()) != cols || (has_im && static_cast<int>(j["im"][i].size()) != cols))
      throw std::invalid_argument("matrix: ragged rows");
    for (int k = 0; k < cols; ++k)
      m(i, k) = cplx(re[i][k].get<double>(), has_im ? j["im"][i][k].get<double>() : 0.0);
  }
  return m;
}

Json to_json(const DomainSpec& d) {
  Json j{{"kind", to_string(d.kind)}};
  switch (d.kind) {
    case DomainKind::RealLine:
    case DomainKind::HalfLine:
      j["x_max"] = d.x_max;
      j["n_points"] = d.n_points;
      break;
    case DomainKind::Interval:
      j["L"] = d.L;
      j["n_points"] = d.n_points;
      break;
    case DomainKind::LatticeZ:
      j["L0"] = d.L0;
      j["lambda0"] = d.lambda0;
      j["n_points"] = d.n_points;
      j["m_min"] = d.m_min;
      break;
    case DomainKind::LatticeN:
      j["L0"] = d.L0;
      j["n_points"] = d.n_points;
      break;
    case DomainKind::FiniteDim:
      j["D"] = d.D;
      j["n0"] = d.n0;
      j["fock_dim"] = d.fock_dim;
      break;
  }
  return j;
}

DomainSpec domain_from_json(const Json& j) {
  if (!j.contains("kind")) throw std::invalid_argument("domain: missing \"kind\"");
  DomainKind kind = domain_kind_from_string(j["kind"].get<std::string>());
  DomainParams p;
  p.L = j.value("L", p.L);
  p.L0 = j.value("L0", p.L0);
  p.lambda0 = j.value("lambda0", p.lambda0);
  p.x_max = j.value("x_max", p.x_max);
  p.n_points = j.value("n_points", p.n_points);
  p.D = j.value("D", p.D);
  p.n0 = j.value("n0", p.n0);
  p.fock_dim = j.value("fock_dim", p.fock_dim);
  if (j.contains("m_min")) {
    p.m_min = j["m_min"].get<long>();
    p.m_min_set = true;
  }
  return make_domain(kind, p);
}

Json to_json(const StateVector& s) {
  Json j{{"domain", to_json(s.domain)}};
  Json m = matrix_to_json(s.amplitudes.transpose());
  j["re"] = m["re"];
  j["im"] = m["im"];
  return j;
}

StateVector state_from_json(const Json& j) {
  if (!j.contains("domain")) throw std::invalid_argument("state: missing \"domain\"");
  DomainSpec d = domain_from_json(j["domain"]);
  Mat m = matrix_from_json(j);
  if (m.rows() != 1) throw std::invalid_argument("state: expected a single row");
  return make_state(d, m.row(0).transpose());
}

Json to_json(const LinearOperator& op) {
  Json j{{"domain", to_json(op.domain)}};
  Json m = matrix_to_json(op.matrix);
  j["re"] = m["re"];
  j["im"] = m["im"];
  j["meta"] = {{"hermitian_tol", op.meta.hermitian_tol}, {"unitary_tol", op.meta.unitary_tol}};
  return j;
}

LinearOperator operator_from_json(const Json& j) {
  if (!j.contains("domain")) throw std::invalid_argument("operator: missing \"domain\"");
  return make_operator(domain_from_json(j["domain"]), matrix_from_json(j));
}

Json to_json(const MeasureFamily& f) {
  Json j{{"domain", to_json(f.domain)},
         {"family_kind", f.family_kind == FamilyKind::Projective ? "Projective" : "General"}};
  Json els = Json::array();
  for (const auto& e : f.elements)
    els.push_back(Json{{"label", e.label}, {"weight", e.weight}, {"factor", matrix_to_json(e.factor)}});
  j["elements"] = std::move(els);
  if (f.resolved.size() > 0) j["resolved"] = matrix_to_json(f.resolved);
  j["completeness_deviation"] = f.completeness_deviation;
  return j;
}

MeasureFamily family_from_json(const Json& j) {
  if (!j.contains("domain") || !j.contains("elements"))
    throw std::invalid_argument("family: needs \"domain\" and \"elements\"");
  MeasureFamily f;
  f.domain = domain_from_json(j["domain"]);
  std::string kind = j.value("family_kind", std::string("General"));
  if (kind != "General" && kind != "Projective") throw std::invalid_argument("family: unknown family_kind");
  f.family_kind = kind == "Projective" ? FamilyKind::Projective : FamilyKind::General;
  int d = f.domain.size();
  for (const auto& ej : j["elements"]) {
    std::vector<double> label = ej.value("label", std::vector<double>{});
    double w = ej.value("weight", 1.0);
    MeasureElement e;
    if (ej.contains("factor")) {
      e.label = label;
      e.weight = w;
      e.factor = matrix_from_json(ej["factor"]);
    } else if (ej.contains("operator")) {
      e = element_from_operator(matrix_from_json(ej["operator"]), w, label);
    } else {
      throw std::invalid_argument("family: element needs \"factor\" or \"operator\"");
    }
    if (e.factor.rows() != d) throw std::invalid_argument("family: element dimension does not match domain");
    f.elements.push_back(std::move(e));
  }
  if (j.contains("resolved")) f.resolved = matrix_from_json(j["resolved"]);
  return finalize_family(std::move(f));
}

Json to_json(const FamilyValidation& v) {
  return Json{{"complete", v.complete},
              {"projective", v.projective},
              {"completeness_deviation", v.completeness_deviation},
              {"max_pair_product", v.max_pair_product},
              {"max_idempotency_defect", v.max_idempotency_defect},
              {"min_eigenvalue", v.min_eigenvalue},
              {"purities", v.purities}};
}

Json to_json(const DilationResult& r) {
  Json j{{"isometry", matrix_to_json(r.isometry)},
         {"unitary", matrix_to_json(r.unitary)},
         {"isometry_defect", r.isometry_defect},
         {"unitarity_defect", r.unitarity_defect},
         {"reconstruction_error", r.reconstruction_error}};
  return j;
}

Json to_json(const FrameReport& r) {
  return Json{{"a", r.a_lat}, {"b", r.b_lat},   {"N", r.N},         {"extent", r.extent},
              {"block", r.block}, {"A", r.A},   {"B", r.B},         {"ratio", r.ratio},
              {"coverage_tail", r.coverage_tail}};
}

Json to_json(const CoherentPovmCheck& c) {
  return Json{{"deviation", c.deviation}, {"vacuum", c.vacuum}, {"nodes", c.nodes}};
}

Json to_json(const EnsembleSummary& s) {
  return Json{{"trajectories", s.trajectories},
              {"invalid", s.invalid},
              {"median_final_purity", s.median_final_purity},
              {"monotone_fraction", s.monotone_fraction},
              {"block", s.block},
              {"unbiased_deviation", s.unbiased_deviation},
              {"mean_unnormalized_block", matrix_to_json(s.mean_unnormalized.topLeftCorner(s.block, s.block))},
              {"final_purities", s.final_purities},
              {"times", s.times},
              {"median_log_impurity", s.median_log_impurity}};
}

Json to_json(const LieClosureReport& r) {
  static const char* names[] = {"1", "i1", "X", "P", "iX", "iP", "X2+P2"};
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(Json{{"pair", {names[e.i], names[e.j]}}, {"residual", e.residual}, {"coefficients", e.coefficients}});
  return Json{{"block", r.block}, {"max_residual", r.max_residual}, {"entries", entries}};
}

Json trajectory_summary_json(const TrajectoryRecord& r) {
  return Json{{"seed", r.seed},
              {"index", r.index},
              {"dt", r.dt},
              {"steps", r.steps},
              {"valid", r.valid},
              {"max_mean_number", r.max_mean_number},
              {"final_purity", r.series.empty() ? 0.0 : r.series.back().purity}};
}

Json to_json(const ParadoxReport& r) {
  Json j{{"name", r.name},
         {"conventions",
          {{"L", r.conventions.L}, {"mass", r.conventions.mass}, {"eigen_index", r.conventions.eigen_index},
           {"hbar", r.conventions.hbar}}}};
  Json params = Json::object(), q = Json::object(), v = Json::object();
  for (const auto& [k, x] : r.parameters) params[k] = x;
  for (const auto& [k, x] : r.quantities) q[k] = x;
  for (const auto& d : r.verdicts)
    v[d.name] = {{"pass", d.pass}, {"value", d.value}, {"tolerance", d.tolerance}, {"rule", d.rule}};
  j["parameters"] = params;
  j["quantities"] = q;
  j["verdicts"] = v;
  j["pass"] = r.all_pass();
  return j;
}

ParadoxConfig paradox_config_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("paradox config: expected an object");
  ParadoxConfig c;
  if (j.contains("scenarios")) c.scenarios = j["scenarios"].get<std::vector<std::string>>();
  if (j.contains("constant_wf")) {
    const Json& s = j["constant_wf"];
    c.constant_wf.theta0 = s.value("theta0", c.constant_wf.theta0);
    c.constant_wf.m_max = s.value("m_max", c.constant_wf.m_max);
    c.constant_wf.L = s.value("L", c.constant_wf.L);
    c.constant_wf.parseval_tol = s.value("parseval_tol", c.constant_wf.parseval_tol);
  }
  if (j.contains("sinc_moments")) {
    const Json& s = j["sinc_moments"];
    c.sinc.cutoffs = s.value("cutoffs", c.sinc.cutoffs);
    c.sinc.L = s.value("L", c.sinc.L);
  }
  if (j.contains("finite_well")) {
    const Json& s = j["finite_well"];
    c.well.depths = s.value("depths", c.well.depths);
    c.well.L = s.value("L", c.well.L);
    c.well.eigen_index = s.value("eigen_index", c.well.eigen_index);
    c.well.n_inside = s.value("n_inside", c.well.n_inside);
    c.well.margin_decay_lengths = s.value("margin_decay_lengths", c.well.margin_decay_lengths);
    c.well.margin_min = s.value("margin_min", c.well.margin_min);
    c.well.total_tol = s.value("total_tol", c.well.total_tol);
    c.well.pattern_tol = s.value("pattern_tol", c.well.pattern_tol);
  }
  if (j.contains("energy_variance")) {
    const Json& s = j["energy_variance"];
    c.variance.n_points = s.value("n_points", c.variance.n_points);
    c.variance.L = s.value("L", c.variance.L);
    c.variance.stability_tol = s.value("stability_tol", c.variance.stability_tol);
  }
  for (const auto& k : j.items())
    if (k.key() != "scenarios" && k.key() != "constant_wf" && k.key() != "sinc_moments" &&
        k.key() != "finite_well" && k.key() != "energy_variance")
      throw std::invalid_argument("paradox config: unknown key '" + k.key() + "'");
  return c;
}

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

std::string csv_table(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + format_number(r[i]);
    out += "\n";
  }
  return out;
}

std::string trajectory_csv(const TrajectoryRecord& r) {
  std::vector<std::vector<double>> rows;
  rows.reserve(r.series.size());
  for (const auto& s : r.series) rows.push_back({s.t, s.dW_X, s.dW_P, s.purity, s.mean_x, s.mean_p});
  return csv_table({"t", "dW_X", "dW_P", "purity", "mean_X", "mean_P"}, rows);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

ParadoxRunResult run_report(const ParadoxConfig& config, const std::string& out_dir) {
  std::vector<std::string> names = config.scenarios.empty() ? paradox_scenarios() : config.scenarios;
  for (const auto& n : names)
    if (std::find(paradox_scenarios().begin(), paradox_scenarios().end(), n) == paradox_scenarios().end())
      throw std::invalid_argument("paradox: unknown scenario '" + n + "'");
  ParadoxRunResult res;
  Json summary = Json::array();
  for (const auto& n : names) {
    ParadoxReport r = run_scenario(n, config);
    std::string base = (std::filesystem::path(out_dir) / r.name).string();
    write_text_file(base + ".json", dump_json(to_json(r)));
    res.files.push_back(base + ".json");
    for (const auto& t : r.tables) {
      write_text_file(base + "_" + t.name + ".csv", csv_table(t.columns, t.rows));
      res.files.push_back(base + "_" + t.name + ".csv");
    }
    Json failing = Json::array();
    for (const auto& v : r.verdicts)
      if (!v.pass) {
        failing.push_back(v.name);
        res.failing.push_back(r.name + "." + v.name);
      }
    summary.push_back(Json{{"name", r.name}, {"pass", r.all_pass()}, {"failing", failing}});
    res.all_pass = res.all_pass && r.all_pass();
  }
  if (names.size() > 1) {
    std::string path = (std::filesystem::path(out_dir) / "summary.json").string();
    write_text_file(path, dump_json(Json{{"scenarios", summary}, {"pass", res.all_pass}}));
    res.files.push_back(path);
  }
  return res;
}

}  // namespace hp
