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

#include "hilbertpairs/paradox.hpp"

#include <lapacke.h>

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

namespace hp {

bool ParadoxReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

namespace {

Verdict below(const std::string& name, double value, double tol, const std::string& rule) {
  return Verdict{name, value < tol, value, tol, rule};
}

double rel(double value, double target) { return std::abs(value - target) / std::abs(target); }

}  // namespace

// ---------------------------------------------------------------------------
// Constant wave function on the interval.

cplx constant_wf_coefficient(double theta0, int m) {
  return kI * (std::exp(-kI * theta0) - 1.0) / (theta0 + 2.0 * kPi * m);
}

namespace {

struct SeriesSums {
  double parseval = 0.0;
  double first = 0.0;
  double second = 0.0;
};

// Symmetric partial sums over |m| <= M of |c_m|^2 p_m^n, small terms first.
SeriesSums constant_wf_sums(double theta0, int M, double L) {
  SeriesSums s;
  double pre = 4.0 * std::sin(0.5 * theta0) * std::sin(0.5 * theta0);
  for (int a = M; a >= 1; --a)
    for (int m : {a, -a}) {
      double q = theta0 + 2.0 * kPi * m;
      s.parseval += pre / (q * q);
      s.first += pre / (q * L);
      s.second += pre / (L * L);
    }
  double q0 = theta0;
  s.parseval += pre / (q0 * q0);
  s.first += pre / (q0 * L);
  s.second += pre / (L * L);
  return s;
}

}  // namespace

ParadoxReport constant_wf_report(const ConstantWfParams& prm) {
  if (!(prm.theta0 >= 0.0) || !(prm.theta0 < 2.0 * kPi))
    throw std::invalid_argument("constant_wf: theta0 must lie in [0, 2 pi)");
  if (prm.m_max < 10) throw std::invalid_argument("constant_wf: m_max must be >= 10");
  if (!(prm.L > 0)) throw std::invalid_argument("constant_wf: L must be positive");
  ParadoxReport r;
  r.name = "constant_wf";
  r.conventions.L = prm.L;
  r.parameters = {{"theta0", prm.theta0}, {"m_max", prm.m_max}, {"parseval_tol", prm.parseval_tol}};

  if (prm.theta0 == 0.0) {
    // The constant is the zero-momentum eigenvector: c_0 = 1 and every moment vanishes.
    r.parameters["eigenstate_branch"] = 1;
    r.quantities = {{"parseval_sum", 1.0}, {"moment_1", 0.0}, {"moment_2", 0.0}};
    r.verdicts.push_back(below("eigenstate_moments_zero", 0.0, 1e-12, "|<P^n>| < tol for n = 1, 2"));
    return r;
  }

  r.parameters["eigenstate_branch"] = 0;
  SeriesSums full = constant_wf_sums(prm.theta0, prm.m_max, prm.L);
  SeriesSums half = constant_wf_sums(prm.theta0, prm.m_max / 2, prm.L);
  SeriesSums twice = constant_wf_sums(prm.theta0, 2 * prm.m_max, prm.L);
  double deficit = 1.0 - full.parseval;
  double deficit_half = 1.0 - half.parseval;
  r.quantities["parseval_sum"] = full.parseval;
  r.quantities["parseval_deficit"] = deficit;
  r.quantities["parseval_deficit_ratio"] = deficit_half / deficit;
  r.quantities["moment_1_partial"] = full.first;
  r.quantities["moment_1_limit"] = std::sin(prm.theta0) / prm.L;
  r.quantities["moment_2_partial"] = full.second;
  r.quantities["moment_2_growth_ratio"] = twice.second / full.second;

  ParadoxTable t;
  t.name = "partial_sums";
  t.columns = {"m_max", "parseval_sum", "parseval_deficit", "moment_1", "moment_2"};
  for (int M = 10; M <= prm.m_max; M *= 2) {
    SeriesSums s = constant_wf_sums(prm.theta0, M, prm.L);
    t.rows.push_back({static_cast<double>(M), s.parseval, 1.0 - s.parseval, s.first, s.second});
  }
  r.tables.push_back(std::move(t));

  r.verdicts.push_back(below("parseval_deficit", std::abs(deficit), prm.parseval_tol,
                             "1 - sum_{|m|<=m_max} |c_m|^2 < tol"));
  r.verdicts.push_back(below("parseval_inverse_m", std::abs(deficit_half / deficit - 2.0), 0.4,
                             "deficit(m_max/2) / deficit(m_max) within 20% of 2"));
  r.verdicts.push_back(below("moment_2_linear", std::abs(twice.second / full.second - 2.0), 0.2,
                             "S_2(2 m_max) / S_2(m_max) in [1.8, 2.2]"));
  return r;
}

// ---------------------------------------------------------------------------
// Momentum moments of the box state embedded in the line.

double box_momentum_density(double k, double L) {
  double u = 0.5 * k * L;
  double s = std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u;
  return L / (2.0 * kPi) * s * s;
}

namespace {

template <class F>
double symmetric_panels(F f, double cutoff, double panel) {
  using boost::math::quadrature::gauss_kronrod;
  double pos = 0.0, neg = 0.0;
  for (double a = 0.0; a < cutoff; a += panel) {
    double b = std::min(a + panel, cutoff);
    pos += gauss_kronrod<double, 31>::integrate(f, a, b, 5, 1e-13);
    neg += gauss_kronrod<double, 31>::integrate(f, -b, -a, 5, 1e-13);
  }
  return pos + neg;
}

}  // namespace

double squared_density_moment(int n, double cutoff, double L) {
  auto f = [n, L](double k) { return std::pow(k, n) * box_momentum_density(k, L); };
  return symmetric_panels(f, cutoff, 2.0 * kPi / L);
}

double single_sinc_moment(int n, double cutoff, double L) {
  auto f = [n, L](double k) {
    double u = k * L;
    double s = std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u;
    return std::pow(k, n) * s;
  };
  return symmetric_panels(f, cutoff, kPi / L);
}

ParadoxReport sinc_moment_scan(const SincMomentParams& prm) {
  if (prm.n < 0 || prm.n > 2) throw std::invalid_argument("sinc_moment_scan: n must be 0, 1 or 2");
  if (prm.cutoffs.size() < 2) throw std::invalid_argument("sinc_moment_scan: need at least two cutoffs");
  for (size_t i = 0; i < prm.cutoffs.size(); ++i)
    if (!(prm.cutoffs[i] > 0) || (i > 0 && !(prm.cutoffs[i] > prm.cutoffs[i - 1])))
      throw std::invalid_argument("sinc_moment_scan: cutoffs must be positive and increasing");
  ParadoxReport r;
  r.name = "sinc_moments_n" + std::to_string(prm.n);
  r.conventions.L = prm.L;
  r.parameters = {{"n", prm.n}, {"cutoff_first", prm.cutoffs.front()}, {"cutoff_last", prm.cutoffs.back()}};
  ParadoxTable t;
  t.name = "moments_vs_cutoff";
  t.columns = {"cutoff", "squared_density_moment", "single_sinc_moment"};
  std::vector<double> vals;
  for (double K : prm.cutoffs) {
    double v = squared_density_moment(prm.n, K, prm.L);
    vals.push_back(v);
    t.rows.push_back({K, v, single_sinc_moment(prm.n, K, prm.L)});
  }
  r.quantities["moment_at_last_cutoff"] = vals.back();
  r.quantities["single_sinc_at_last_cutoff"] = t.rows.back()[2];

  if (prm.n == 0) {
    bool decreasing = true;
    for (size_t i = 1; i < vals.size(); ++i)
      decreasing = decreasing && std::abs(1.0 - vals[i]) < std::abs(1.0 - vals[i - 1]);
    double tol = 4.0 / (kPi * prm.L * prm.cutoffs.back());
    r.verdicts.push_back(below("normalization_limit", std::abs(1.0 - vals.back()), tol,
                               "|1 - M_0(K)| < 4 / (pi L K) at the last cutoff"));
    r.verdicts.push_back(Verdict{"deficit_decreasing", decreasing, 0.0, 0.0,
                                 "|1 - M_0| strictly decreasing in K"});
  } else if (prm.n == 1) {
    double worst = 0.0;
    for (double v : vals) worst = std::max(worst, std::abs(v));
    r.verdicts.push_back(below("symmetric_first_moment", worst, 1e-10, "max_K |M_1(K)| < tol"));
  } else {
    double worst = 0.0;
    for (size_t i = 1; i < vals.size(); ++i) {
      double ratio = vals[i] / vals[i - 1];
      double target = prm.cutoffs[i] / prm.cutoffs[i - 1];
      worst = std::max(worst, std::abs(ratio / target - 1.0));
    }
    r.quantities["worst_linear_growth_defect"] = worst;
    r.verdicts.push_back(below("second_moment_linear", worst, 0.10,
                               "M_2(K') / M_2(K) within 10% of K' / K"));
  }
  r.tables.push_back(std::move(t));
  return r;
}

// ---------------------------------------------------------------------------
// Finite well: <[X^4, P^4]> from the right-acting expansion
// [X^4, P^4] psi = -(16 x^3 psi''' + 72 x^2 psi'' + 96 x psi' + 24 psi),
// with psi'' = 2 m (V - E) psi. The V' psi part of psi''' is the step term.

namespace {

double smooth_integrand(double x, double psi, double dpsi, double v_minus_e, double mass) {
  double d2 = 2.0 * mass * v_minus_e * psi;
  double d3 = 2.0 * mass * v_minus_e * dpsi;
  return -psi * (16.0 * x * x * x * d3 + 72.0 * x * x * d2 + 96.0 * x * dpsi + 24.0 * psi);
}

}  // namespace

double box_commutator_value(double L, int eigen_index) {
  if (!(L > 0) || eigen_index < 0) throw std::invalid_argument("box_commutator_value: bad arguments");
  double k = (eigen_index + 1) * kPi / L;
  double energy = 0.5 * k * k;
  double amp = std::sqrt(2.0 / L);
  auto f = [&](double x) {
    double ph = k * (x + 0.5 * L);
    return smooth_integrand(x, amp * std::sin(ph), amp * k * std::cos(ph), -energy, 1.0);
  };
  using boost::math::quadrature::gauss_kronrod;
  int panels = 4 * (eigen_index + 1);
  double acc = 0.0;
  for (int i = 0; i < panels; ++i) {
    double a = -0.5 * L + i * L / panels, b = a + L / panels;
    acc += gauss_kronrod<double, 31>::integrate(f, a, b, 5, 1e-14);
  }
  return acc;
}

WellState finite_well_state(double depth, const FiniteWellParams& prm) {
  if (!(depth > 0)) throw std::invalid_argument("finite_well: depth must be positive");
  if (prm.n_inside < 3 || prm.n_inside % 2 == 0)
    throw std::invalid_argument("finite_well: n_inside must be odd and >= 3");
  double h = prm.L / prm.n_inside;
  double kappa0 = std::sqrt(2.0 * depth);
  double margin = std::max(prm.margin_decay_lengths / kappa0, prm.margin_min);
  int side = static_cast<int>(std::ceil(margin / h));
  int n = prm.n_inside + 2 * side;
  if (prm.eigen_index < 0 || prm.eigen_index >= n)
    throw std::invalid_argument("finite_well: eigen_index out of range");

  WellState ws;
  ws.h = h;
  ws.x.resize(n);
  std::vector<double> diag(n), off(n - 1, -0.5 / (h * h));
  for (int j = 0; j < n; ++j) {
    ws.x[j] = -0.5 * prm.L - side * h + (j + 0.5) * h;
    double v = std::abs(ws.x[j]) < 0.5 * prm.L ? 0.0 : depth;
    diag[j] = 1.0 / (h * h) + v;
  }
  lapack_int found = 0;
  std::vector<double> w(n), z(n);
  std::vector<lapack_int> support(2);
  lapack_int idx = prm.eigen_index + 1;
  lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0,
                                   idx, idx, 0.0, &found, w.data(), z.data(), n, support.data());
  if (info != 0 || found != 1) throw std::runtime_error("finite_well: tridiagonal eigensolver failed");
  ws.energy = w[0];
  if (!(ws.energy < depth)) throw std::domain_error("finite_well: eigenstate is not bound at this depth");
  ws.psi = Eigen::Map<RVec>(z.data(), n) / std::sqrt(h);
  // Fix the sign by the first node where the state is appreciable.
  for (int j = side; j < n; ++j)
    if (std::abs(ws.psi[j]) > 1e-3) {
      if (ws.psi[j] < 0) ws.psi = -ws.psi;
      break;
    }
  return ws;
}

WellDecomposition finite_well_decomposition(double depth, const FiniteWellParams& prm) {
  WellState ws = finite_well_state(depth, prm);
  int n = static_cast<int>(ws.x.size());
  double h = ws.h;
  WellDecomposition d;
  d.depth = depth;
  d.energy = ws.energy;
  d.kappa = std::sqrt(2.0 * (depth - ws.energy));
  d.grid_points = n;
  double half = 0.5 * prm.L;
  int left_wall = -1;
  for (int j = 0; j < n; ++j) {
    double prev = j > 0 ? ws.psi[j - 1] : 0.0;
    double next = j + 1 < n ? ws.psi[j + 1] : 0.0;
    double dpsi = (next - prev) / (2.0 * h);
    bool inside = std::abs(ws.x[j]) < half;
    double v = inside ? 0.0 : depth;
    double val = h * smooth_integrand(ws.x[j], ws.psi[j], dpsi, v - ws.energy, 1.0);
    (inside ? d.inside : d.outside) += val;
    if (inside && left_wall < 0) left_wall = j;
  }
  int right_wall = left_wall + prm.n_inside - 1;
  // Wall values from the two nodes straddling each wall.
  double psi_l = 0.5 * (ws.psi[left_wall - 1] + ws.psi[left_wall]);
  double psi_r = 0.5 * (ws.psi[right_wall] + ws.psi[right_wall + 1]);
  // -16 x^3 psi 2 m V' psi with V' = V0 (delta(x - L/2) - delta(x + L/2)).
  d.boundary = -32.0 * depth * half * half * half * (psi_l * psi_l + psi_r * psi_r);
  d.total = d.inside + d.outside + d.boundary;
  return d;
}

ParadoxReport finite_well_commutator(const FiniteWellParams& prm) {
  if (prm.depths.empty()) throw std::invalid_argument("finite_well: empty depth ladder");
  for (size_t i = 1; i < prm.depths.size(); ++i)
    if (!(prm.depths[i] > prm.depths[i - 1])) throw std::invalid_argument("finite_well: depths must increase");
  ParadoxReport r;
  r.name = "finite_well";
  r.conventions.L = prm.L;
  r.conventions.eigen_index = prm.eigen_index;
  r.parameters = {{"n_inside", prm.n_inside},
                  {"spacing", prm.L / prm.n_inside},
                  {"margin_decay_lengths", prm.margin_decay_lengths},
                  {"margin_min", prm.margin_min},
                  {"total_tol", prm.total_tol},
                  {"pattern_tol", prm.pattern_tol}};
  double c = box_commutator_value(prm.L, prm.eigen_index);
  r.quantities["c_naive"] = c;
  ParadoxTable t;
  t.name = "decomposition_vs_depth";
  t.columns = {"depth", "energy", "inside_ratio", "outside_ratio", "boundary_ratio", "total_ratio",
               "pattern_residual", "grid_points"};
  std::vector<double> residuals;
  WellDecomposition last;
  for (double V0 : prm.depths) {
    last = finite_well_decomposition(V0, prm);
    double ri = last.inside / c, ro = last.outside / c, rb = last.boundary / c, rt = last.total / c;
    double res = std::max({std::abs(ri - 1.0), std::abs(ro - 1.0), std::abs(rb + 2.0) / 2.0});
    residuals.push_back(res);
    t.rows.push_back({V0, last.energy, ri, ro, rb, rt, res, static_cast<double>(last.grid_points)});
  }
  r.tables.push_back(std::move(t));
  r.quantities["depth_max"] = last.depth;
  r.quantities["inside"] = last.inside;
  r.quantities["outside"] = last.outside;
  r.quantities["boundary"] = last.boundary;
  r.quantities["total"] = last.total;
  r.quantities["energy"] = last.energy;
  r.quantities["shallow_residual"] = residuals.front();

  int rises = 0;
  for (size_t i = 1; i < residuals.size(); ++i)
    if (residuals[i] > residuals[i - 1]) ++rises;
  r.verdicts.push_back(below("total_vanishes", std::abs(last.total / c), prm.total_tol,
                             "|total| / |c_naive| < tol at the deepest well"));
  r.verdicts.push_back(below("inside_pattern", rel(last.inside, c), prm.pattern_tol,
                             "|inside / c_naive - 1| < tol"));
  r.verdicts.push_back(below("outside_pattern", rel(last.outside, c), prm.pattern_tol,
                             "|outside / c_naive - 1| < tol"));
  r.verdicts.push_back(below("boundary_pattern", rel(last.boundary, -2.0 * c), prm.pattern_tol,
                             "|boundary / (-2 c_naive) - 1| < tol"));
  r.verdicts.push_back(Verdict{"residual_monotone", rises <= 1, static_cast<double>(rises), 1.0,
                               "pattern residual rises at most once along the ladder"});
  if (prm.depths.size() > 1)
    r.verdicts.push_back(Verdict{"shallow_departs", residuals.front() > prm.pattern_tol, residuals.front(),
                                 prm.pattern_tol, "pattern residual at the shallowest well exceeds tol"});
  return r;
}

// ---------------------------------------------------------------------------
// Energy variance of psi ~ L^2 - 4 x^2.

EnergyVarianceRoutes energy_variance_routes(const RVec& psi, double L) {
  int n = static_cast<int>(psi.size());
  if (n < 5) throw std::invalid_argument("energy_variance: need at least 5 nodes");
  double h = L / n;
  double ih2 = 1.0 / (h * h);
  EnergyVarianceRoutes out;
  // (a) second difference applied twice without boundary data.
  RVec d2 = RVec::Zero(n), d4 = RVec::Zero(n);
  for (int j = 1; j + 1 < n; ++j) d2[j] = (psi[j + 1] - 2.0 * psi[j] + psi[j - 1]) * ih2;
  for (int j = 2; j + 2 < n; ++j) d4[j] = (d2[j + 1] - 2.0 * d2[j] + d2[j - 1]) * ih2;
  out.p4_naive = h * psi.dot(d4);
  // (b) Dirichlet P^2 with the walls midway between the end node and its mirror.
  RVec p2(n);
  for (int j = 0; j < n; ++j) {
    double prev = j > 0 ? psi[j - 1] : -psi[0];
    double next = j + 1 < n ? psi[j + 1] : -psi[n - 1];
    p2[j] = -(next - 2.0 * psi[j] + prev) * ih2;
  }
  out.p2_mean = h * psi.dot(p2);
  out.p2_sq_norm = h * p2.squaredNorm();
  out.variance = out.p2_sq_norm - out.p2_mean * out.p2_mean;
  return out;
}

namespace {

RVec parabola_state(int n, double L) {
  double h = L / n;
  RVec psi(n);
  for (int j = 0; j < n; ++j) {
    double x = -0.5 * L + (j + 0.5) * h;
    psi[j] = L * L - 4.0 * x * x;
  }
  return psi / std::sqrt(h * psi.squaredNorm());
}

}  // namespace

ParadoxReport energy_variance_example(const EnergyVarianceParams& prm) {
  if (prm.n_points < 5) throw std::invalid_argument("energy_variance: n_points must be >= 5");
  if (!(prm.L > 0)) throw std::invalid_argument("energy_variance: L must be positive");
  ParadoxReport r;
  r.name = "energy_variance";
  r.conventions.L = prm.L;
  r.parameters = {{"n_points", prm.n_points}, {"stability_tol", prm.stability_tol}};
  EnergyVarianceRoutes a = energy_variance_routes(parabola_state(prm.n_points, prm.L), prm.L);
  EnergyVarianceRoutes b = energy_variance_routes(parabola_state(2 * prm.n_points, prm.L), prm.L);
  double h = prm.L / prm.n_points;
  RVec eig(prm.n_points);
  for (int j = 0; j < prm.n_points; ++j) eig[j] = std::sin(kPi * (j + 0.5) * h / prm.L);
  eig /= std::sqrt(h * eig.squaredNorm());
  EnergyVarianceRoutes e = energy_variance_routes(eig, prm.L);
  double m = r.conventions.mass;
  r.quantities = {{"p4_naive", a.p4_naive},
                  {"p2_mean", a.p2_mean},
                  {"p2_sq_norm", a.p2_sq_norm},
                  {"p2_variance", a.variance},
                  {"p2_variance_doubled", b.variance},
                  {"energy_variance", a.variance / (4.0 * m * m)},
                  {"naive_energy_variance", (a.p4_naive - a.p2_mean * a.p2_mean) / (4.0 * m * m)},
                  {"eigenstate_variance", e.variance}};
  double change = std::abs(b.variance - a.variance) / std::abs(b.variance);
  r.quantities["relative_change_on_doubling"] = change;
  // Rounding in two nested second differences scales like eps / h^4.
  double naive_tol = 1e-6 * a.p2_sq_norm;
  r.verdicts.push_back(below("naive_route_zero", std::abs(a.p4_naive), naive_tol,
                             "|<psi, D2 D2 psi>| < 1e-6 ||P^2 psi||^2"));
  r.verdicts.push_back(Verdict{"legal_route_positive", a.variance > 0, a.variance, 0.0, "variance > 0"});
  r.verdicts.push_back(below("legal_route_stable", change, prm.stability_tol,
                             "relative change of the variance on grid doubling < tol"));
  r.verdicts.push_back(below("eigenstate_zero_variance", std::abs(e.variance), 1e-8,
                             "|variance| of the box ground state < tol"));
  return r;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& paradox_scenarios() {
  static const std::vector<std::string> names = {"constant_wf", "sinc_moments", "finite_well",
                                                 "energy_variance"};
  return names;
}

ParadoxReport run_scenario(const std::string& name, const ParadoxConfig& cfg) {
  if (name == "constant_wf") return constant_wf_report(cfg.constant_wf);
  if (name == "sinc_moments") {
    // One report covering n = 0, 1, 2 with prefixed entries.
    ParadoxReport all;
    all.name = "sinc_moments";
    all.conventions.L = cfg.sinc.L;
    for (int n = 0; n <= 2; ++n) {
      SincMomentParams p = cfg.sinc;
      p.n = n;
      ParadoxReport one = sinc_moment_scan(p);
      std::string pre = "n" + std::to_string(n) + "_";
      for (const auto& [k, v] : one.parameters) all.parameters[pre + k] = v;
      for (const auto& [k, v] : one.quantities) all.quantities[pre + k] = v;
      for (Verdict v : one.verdicts) {
        v.name = pre + v.name;
        all.verdicts.push_back(v);
      }
      for (ParadoxTable t : one.tables) {
        t.name = pre + t.name;
        all.tables.push_back(t);
      }
    }
    return all;
  }
  if (name == "finite_well") return finite_well_commutator(cfg.well);
  if (name == "energy_variance") return energy_variance_example(cfg.variance);
  throw std::invalid_argument("paradox: unknown scenario '" + name + "'");
}

}  // namespace hp
