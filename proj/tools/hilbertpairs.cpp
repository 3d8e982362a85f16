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

#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hilbertpairs/canonical.hpp"
#include "hilbertpairs/coherent.hpp"
#include "hilbertpairs/measure.hpp"
#include "hilbertpairs/paradox.hpp"
#include "hilbertpairs/serialize.hpp"
#include "hilbertpairs/weak.hpp"

namespace fs = std::filesystem;
using namespace hp;

namespace {

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

void emit(const std::string& dir, const std::string& name, const Json& j) {
  write_text_file(join(dir, name), dump_json(j));
}

StateVector gaussian(const DomainSpec& d, double x0, double width) {
  RVec x = d.points();
  Vec a = (-(x.array() - x0).square() / (2.0 * width * width)).exp().cast<cplx>().matrix();
  return make_state(d, a).normalized();
}

Json operator_checks(const LinearOperator& op) {
  return Json{{"hermitian_tol", op.meta.hermitian_tol}, {"unitary_tol", op.meta.unitary_tol}};
}

Json deficiency_json(DomainKind kind) {
  DeficiencyReport r = deficiency_evidence(kind);
  return Json{{"n_plus", r.n_plus}, {"n_minus", r.n_minus}, {"tail_plus", r.tail_plus},
              {"tail_minus", r.tail_minus}, {"verdict", r.verdict}};
}

double commutator_residual(const LinearOperator& X, const LinearOperator& P, const StateVector& psi) {
  Vec v = X.matrix * (P.matrix * psi.amplitudes) - P.matrix * (X.matrix * psi.amplitudes) -
          kI * psi.amplitudes;
  return v.norm() / psi.amplitudes.norm();
}

struct PairOptions {
  int pair_case = 1;
  double theta0 = 0.0;
  int grid = 0;
  double x_max = 10.0;
  double L = 1.0;
  double L0 = 1.0;
  double lambda0 = 0.0;
  int D = 5;
  int cutoff = 8;
  std::string out = "pair";
};

int pair_build(const PairOptions& o) {
  Json report{{"case", o.pair_case}};
  switch (o.pair_case) {
    case 1: {
      DomainSpec d = real_line(o.x_max, o.grid > 0 ? o.grid : 256);
      LinearOperator X = position_operator(d), P = momentum_line(d);
      LinearOperator Pcd = momentum_line(d, DerivativeScheme::CentralDifference);
      StateVector g = gaussian(d, 0.0, 1.0);
      WeylCheckReport w = weyl_check_line(X, P, 0.5, 0.7, {g, gaussian(d, 1.0, 0.8)});
      emit(o.out, "X.json", to_json(X));
      emit(o.out, "P.json", to_json(P));
      report["domain"] = to_json(d);
      report["X"] = operator_checks(X);
      report["P"] = operator_checks(P);
      report["commutator_residual_spectral"] = commutator_residual(X, P, g);
      report["commutator_residual_central_difference"] = commutator_residual(X, Pcd, g);
      report["weyl"] = {{"s", w.s}, {"t", w.t}, {"max_deviation", w.max_deviation},
                        {"interior_entrywise", w.interior_entrywise}};
      report["deficiency"] = deficiency_json(DomainKind::RealLine);
      break;
    }
    case 2: {
      DomainSpec d = half_line(o.x_max > 0 ? o.x_max : 20.0, o.grid > 0 ? o.grid : 400);
      LinearOperator X = position_operator(d);
      double p_max = 0.5 * kPi / d.spacing();
      std::vector<double> ps;
      int np = 2 * d.size();
      for (int i = 0; i <= np; ++i) ps.push_back(-p_max + 2.0 * p_max * i / np);
      MeasureFamily fam = momentum_povm_halfline(d, ps);
      emit(o.out, "X.json", to_json(X));
      report["domain"] = to_json(d);
      report["X"] = operator_checks(X);
      report["momentum_family"] = {{"samples", ps.size()},
                                   {"p_max", p_max},
                                   {"completeness_deviation", fam.completeness_deviation},
                                   {"adjacent_band_product", band_product_norm(fam, -1.0, 0.0, 1.0)}};
      report["deficiency"] = deficiency_json(DomainKind::HalfLine);
      break;
    }
    case 3: {
      DomainSpec d = interval(o.L, o.grid > 0 ? o.grid : 256);
      ExtensionParams ext{o.theta0, o.cutoff};
      LinearOperator X = position_operator(d), P = momentum_interval_extension(d, ext);
      Eigen::SelfAdjointEigenSolver<Mat> es(P.matrix, Eigen::EigenvaluesOnly);
      std::vector<double> expected;
      for (int m = -o.cutoff; m <= o.cutoff; ++m) expected.push_back(extension_momentum(ext, o.L, m));
      std::sort(expected.begin(), expected.end());
      // The nonzero spectrum is the resolved band; the complement sits at zero.
      std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
      double mismatch = 0.0;
      for (double e : expected) {
        double best = 1e300;
        for (double v : ev) best = std::min(best, std::abs(v - e));
        mismatch = std::max(mismatch, best);
      }
      std::vector<StateVector> states = {gaussian(d, 0.3 * o.L, 0.1 * o.L), gaussian(d, 0.5 * o.L, 0.1 * o.L)};
      WeylCheckReport w = weyl_check_interval(X, P, 0.6 * o.L, kPi / o.L, states);
      emit(o.out, "X.json", to_json(X));
      emit(o.out, "P.json", to_json(P));
      report["domain"] = to_json(d);
      report["theta0"] = o.theta0;
      report["cutoff"] = o.cutoff;
      report["X"] = operator_checks(X);
      report["P"] = operator_checks(P);
      report["eigenvalue_mismatch"] = mismatch;
      report["weyl"] = {{"s", w.s}, {"t", w.t}, {"corrected_deviation", w.max_deviation},
                        {"naive_deviation", w.naive_deviation}};
      report["deficiency"] = deficiency_json(DomainKind::Interval);
      break;
    }
    case 4: {
      DomainSpec d = lattice_z(o.L0, o.lambda0, o.grid > 0 ? o.grid : 64);
      DualPair dp = dual_pair_lattice(d);
      emit(o.out, "X.json", to_json(dp.X));
      emit(o.out, "P.json", to_json(dp.P));
      report["domain"] = to_json(d);
      report["X"] = operator_checks(dp.X);
      report["P"] = operator_checks(dp.P);
      report["momenta"] = std::vector<double>(dp.momenta.data(), dp.momenta.data() + dp.momenta.size());
      break;
    }
    case 5: {
      DomainSpec d = lattice_n(o.L0, o.grid > 0 ? o.grid : 64);
      LinearOperator X = position_operator(d);
      std::vector<double> ps;
      int np = 8 * d.size();
      for (int i = 0; i <= np; ++i) ps.push_back(-kPi / o.L0 + 2.0 * kPi / o.L0 * i / np);
      MeasureFamily fam = momentum_povm_halfline(d, ps);
      emit(o.out, "X.json", to_json(X));
      report["domain"] = to_json(d);
      report["X"] = operator_checks(X);
      report["momentum_family"] = {{"samples", ps.size()}, {"completeness_deviation", fam.completeness_deviation}};
      break;
    }
    case 6: {
      DiscreteWeyl w = discrete_weyl(o.D, 0, o.theta0);
      double worst = 0.0;
      for (int n = 0; n < o.D; ++n)
        for (int m = 0; m < o.D; ++m) worst = std::max(worst, relation_deviation(w, n, m));
      emit(o.out, "X.json", to_json(w.X6));
      emit(o.out, "P.json", to_json(w.P6));
      emit(o.out, "shift.json", to_json(w.shift));
      emit(o.out, "clock.json", to_json(w.clock));
      report["domain"] = to_json(w.X6.domain);
      report["X"] = operator_checks(w.X6);
      report["P"] = operator_checks(w.P6);
      report["shift"] = operator_checks(w.shift);
      report["clock"] = operator_checks(w.clock);
      report["max_relation_deviation"] = worst;
      break;
    }
    default:
      throw std::invalid_argument("pair build: --case must be 1..6");
  }
  emit(o.out, "report.json", report);
  return 0;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  if (out.empty()) throw std::invalid_argument("empty list '" + s + "'");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical pairs, measurement families and weak-measurement simulation"};
  app.require_subcommand(1);

  // pair build
  PairOptions po;
  auto* pair = app.add_subcommand("pair", "Coordinate and momentum operators on the six domain kinds");
  pair->require_subcommand(1);
  auto* pair_build_cmd = pair->add_subcommand("build", "Build X and P for a case and validate them");
  pair_build_cmd->add_option("--case", po.pair_case, "1 line, 2 half line, 3 interval, 4 Z lattice, 5 N lattice, 6 finite")
      ->required()
      ->check(CLI::Range(1, 6));
  pair_build_cmd->add_option("--theta0", po.theta0, "Extension angle (case 3) or momentum offset (case 6)");
  pair_build_cmd->add_option("--grid", po.grid, "Grid or window size");
  pair_build_cmd->add_option("--x-max", po.x_max, "Line half-width or half-line extent");
  pair_build_cmd->add_option("--L", po.L, "Interval length");
  pair_build_cmd->add_option("--L0", po.L0, "Lattice spacing");
  pair_build_cmd->add_option("--lambda0", po.lambda0, "Lattice offset");
  pair_build_cmd->add_option("--D", po.D, "Finite dimension");
  pair_build_cmd->add_option("--cutoff", po.cutoff, "Interval momentum cutoff");
  pair_build_cmd->add_option("--out", po.out, "Output directory");

  // measure validate / dilate / generate
  auto* measure = app.add_subcommand("measure", "Measurement families");
  measure->require_subcommand(1);
  std::string in_path, out_path;
  double tol = 1e-8;
  auto* validate = measure->add_subcommand("validate", "Completeness, projectivity and purities");
  validate->add_option("--in", in_path, "Family JSON")->required();
  validate->add_option("--out", out_path, "Report path (stdout if omitted)");
  validate->add_option("--tol", tol, "Completeness tolerance");
  auto* dilate = measure->add_subcommand("dilate", "Neumark dilation of a rank-1 family");
  dilate->add_option("--in", in_path, "Family JSON")->required();
  dilate->add_option("--out", out_path, "Dilation JSON")->required();
  std::string gen_kind = "restricted";
  int gen_d = 2, gen_n = 4;
  std::uint64_t gen_seed = 1;
  auto* generate = measure->add_subcommand("generate", "Write an example family");
  generate->add_option("--kind", gen_kind, "restricted or tetrahedron")
      ->check(CLI::IsMember({"restricted", "tetrahedron"}));
  generate->add_option("--d", gen_d, "Dimension");
  generate->add_option("--n", gen_n, "Outcomes");
  generate->add_option("--seed", gen_seed, "Seed");
  generate->add_option("--out", out_path, "Family JSON")->required();

  // frames scan
  std::string frames_n = "1,2,3,4";
  int frames_fock = 40, frames_extent = 8, frames_block = 0;
  std::string frames_out = "frames";
  auto* frames = app.add_subcommand("frames", "Coherent-state lattice frames");
  frames->require_subcommand(1);
  auto* scan = frames->add_subcommand("scan", "Frame bounds versus lattice density");
  scan->add_option("--N", frames_n, "Comma-separated densities N = 2 pi / (a b)");
  scan->add_option("--fock", frames_fock, "Fock truncation");
  scan->add_option("--extent", frames_extent, "Lattice indices |m|, |n| <= extent");
  scan->add_option("--block", frames_block, "Fock block (default fock / 3)");
  scan->add_option("--out", frames_out, "Output directory");

  // coherent povm-check
  int coh_fock = 30, coh_block = 10;
  double coh_radius = 6.0;
  std::string coh_steps = "0.4,0.2,0.1,0.05";
  std::string coh_out = "coherent";
  auto* coherent = app.add_subcommand("coherent", "Coherent-state measurement");
  coherent->require_subcommand(1);
  auto* povm_check = coherent->add_subcommand("povm-check", "Riemann-sum completeness versus step");
  povm_check->add_option("--fock", coh_fock, "Fock truncation");
  povm_check->add_option("--radius", coh_radius, "Disc radius");
  povm_check->add_option("--steps", coh_steps, "Comma-separated grid steps");
  povm_check->add_option("--block", coh_block, "Fock block");
  povm_check->add_option("--out", coh_out, "Output directory");

  // weaksim run
  TrajectoryParams tp;
  int traj = 4, wblock = 8;
  std::string w_out = "weaksim";
  auto* weaksim = app.add_subcommand("weaksim", "Simultaneous weak X, P measurement");
  weaksim->require_subcommand(1);
  auto* wrun = weaksim->add_subcommand("run", "Seeded trajectories from the vacuum");
  wrun->add_option("--seed", tp.seed, "Master seed");
  wrun->add_option("--traj", traj, "Trajectory count")->check(CLI::PositiveNumber);
  wrun->add_option("--dt", tp.dt, "Time step");
  wrun->add_option("--T", tp.T, "Final time");
  wrun->add_option("--fock", tp.fock_dim, "Fock truncation");
  wrun->add_option("--record-every", tp.record_every, "Series stride in steps");
  wrun->add_option("--block", wblock, "Fock block of the completeness statistic");
  wrun->add_option("--out", w_out, "Output directory");

  // paradox run
  bool p_all = false;
  std::vector<std::string> p_scen;
  std::string p_config, p_out = "report";
  int p_mmax = 0;
  auto* paradox = app.add_subcommand("paradox", "Finite-interval regression scenarios");
  paradox->require_subcommand(1);
  auto* prun = paradox->add_subcommand("run", "Run scenarios and write reports");
  prun->add_flag("--all", p_all, "Run every scenario");
  prun->add_option("--scenario", p_scen, "Scenario name (repeatable)");
  prun->add_option("--config", p_config, "JSON config file");
  prun->add_option("--m-max", p_mmax, "Override the constant_wf series cutoff");
  prun->add_option("--out", p_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pair_build_cmd->parsed()) return pair_build(po);

    if (validate->parsed()) {
      MeasureFamily fam = family_from_json(read_json_file(in_path));
      Json j = to_json(validate_family(fam, tol));
      if (out_path.empty())
        std::cout << dump_json(j);
      else
        write_text_file(out_path, dump_json(j));
      return 0;
    }
    if (dilate->parsed()) {
      MeasureFamily fam = family_from_json(read_json_file(in_path));
      write_text_file(out_path, dump_json(to_json(neumark_dilate(fam))));
      return 0;
    }
    if (generate->parsed()) {
      MeasureFamily fam = gen_kind == "tetrahedron" ? tetrahedron_povm() : restricted_basis_povm(gen_d, gen_n, gen_seed);
      write_text_file(out_path, dump_json(to_json(fam)));
      return 0;
    }

    if (scan->parsed()) {
      std::vector<std::vector<double>> rows;
      Json reps = Json::array();
      for (double N : parse_list(frames_n)) {
        FrameReport r = lattice_frame_density(N, frames_extent, frames_fock, frames_block);
        rows.push_back({N, r.A, r.B, r.ratio});
        reps.push_back(to_json(r));
      }
      write_text_file(join(frames_out, "frames.csv"), csv_table({"N", "A", "B", "B_over_A"}, rows));
      emit(frames_out, "frames.json",
           Json{{"fock", frames_fock}, {"extent", frames_extent}, {"normalization", "cell area a b"}, {"lattices", reps}});
      return 0;
    }

    if (povm_check->parsed()) {
      std::vector<std::vector<double>> rows;
      Json reps = Json::array();
      for (double st : parse_list(coh_steps)) {
        CoherentPovmCheck c = coherent_povm_check(coh_fock, coh_radius, st, coh_block);
        rows.push_back({st, c.deviation, c.vacuum, static_cast<double>(c.nodes)});
        Json j = to_json(c);
        j["step"] = st;
        reps.push_back(j);
      }
      write_text_file(join(coh_out, "povm_check.csv"), csv_table({"step", "deviation", "vacuum", "nodes"}, rows));
      emit(coh_out, "povm_check.json",
           Json{{"fock", coh_fock}, {"radius", coh_radius}, {"block", coh_block}, {"weight", "step^2 / pi"}, {"steps", reps}});
      return 0;
    }

    if (wrun->parsed()) {
      Vec v0 = Vec::Zero(tp.fock_dim);
      v0[0] = 1.0;
      StateVector psi0 = make_state(fock_space(tp.fock_dim), v0);
      Json trajs = Json::array();
      tp.index = 0;
      EnsembleSummary sum = run_ensemble(psi0, tp, traj, wblock, [&](int i, const TrajectoryRecord& rec) {
        write_text_file(join(w_out, fmt::format("trajectory_{:04d}.csv", i)), trajectory_csv(rec));
        trajs.push_back(trajectory_summary_json(rec));
      });
      Json j{{"seed", tp.seed}, {"dt", tp.dt}, {"T", tp.T}, {"fock", tp.fock_dim},
             {"rng", "philox4x32-10, key = seed, counter words 2-3 = trajectory index"},
             {"ensemble", to_json(sum)}, {"trajectories", trajs}};
      emit(w_out, "ensemble.json", j);
      return 0;
    }

    if (prun->parsed()) {
      ParadoxConfig cfg;
      if (!p_config.empty()) cfg = paradox_config_from_json(read_json_file(p_config));
      if (!p_scen.empty()) cfg.scenarios = p_scen;
      if (p_all) cfg.scenarios.clear();
      if (p_mmax > 0) cfg.constant_wf.m_max = p_mmax;
      if (!p_all && cfg.scenarios.empty() && p_config.empty())
        throw std::invalid_argument("paradox run: give --all, --scenario or --config");
      ParadoxRunResult res = run_report(cfg, p_out);
      for (const auto& f : res.failing) std::cerr << "FAILED " << f << "\n";
      return res.all_pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
