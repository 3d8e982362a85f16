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

#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hilbertpairs/paradox.hpp"
#include "hilbertpairs/serialize.hpp"

using namespace hp;
using boost::math::quadrature::gauss_kronrod;

namespace {

const Verdict& verdict(const ParadoxReport& r, const std::string& name) {
  for (const auto& v : r.verdicts)
    if (v.name == name) return v;
  throw std::runtime_error("missing verdict " + name);
}

// Composite Simpson rule on [a, b] with n (even) intervals.
template <class F>
double simpson(F f, double a, double b, int n) {
  double h = (b - a) / n, s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("hp_paradox_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST(ConstantWf, CoefficientsMatchDirectQuadrature) {
  for (double theta : {0.5, kPi, 4.0})
    for (int m : {-3, 0, 2, 7}) {
      double p = theta + 2.0 * kPi * m;
      // <e_m | 1> on the unit interval with e_m = e^{i p x}.
      double re = gauss_kronrod<double, 61>::integrate([&](double x) { return std::cos(p * x); }, 0.0, 1.0, 10, 1e-15);
      double im = gauss_kronrod<double, 61>::integrate([&](double x) { return -std::sin(p * x); }, 0.0, 1.0, 10, 1e-15);
      EXPECT_NEAR(std::abs(constant_wf_coefficient(theta, m) - cplx(re, im)), 0.0, 1e-12);
    }
}

TEST(ConstantWf, ParsevalAndMoments) {
  for (double theta : {0.5, kPi, 4.0}) {
    // Closed form: sum_m 1 / (theta + 2 pi m)^2 = 1 / (4 sin^2(theta / 2)).
    double s = 0.0;
    for (int m = -200000; m <= 200000; ++m) s += 1.0 / std::pow(theta + 2.0 * kPi * m, 2);
    EXPECT_NEAR(s * 4.0 * std::pow(std::sin(0.5 * theta), 2), 1.0, 1e-5);
    ConstantWfParams prm;
    prm.theta0 = theta;
    ParadoxReport r = constant_wf_report(prm);
    EXPECT_TRUE(r.all_pass()) << theta;
    EXPECT_NEAR(r.quantities.at("parseval_sum"), 1.0, 1e-4);
    EXPECT_GT(r.quantities.at("moment_2_partial"), 1e3);
  }
}

TEST(ConstantWf, EigenstateBranchAndValidation) {
  ConstantWfParams prm;
  prm.theta0 = 0.0;
  ParadoxReport r = constant_wf_report(prm);
  EXPECT_TRUE(verdict(r, "eigenstate_moments_zero").pass);
  prm.theta0 = 2.0 * kPi;
  EXPECT_THROW(constant_wf_report(prm), std::invalid_argument);
  prm.theta0 = kPi;
  prm.m_max = 5;
  EXPECT_THROW(constant_wf_report(prm), std::invalid_argument);
}

TEST(ConstantWf, SmallCutoffFailsParseval) {
  ConstantWfParams prm;
  prm.m_max = 10;
  ParadoxReport r = constant_wf_report(prm);
  EXPECT_FALSE(r.all_pass());
  EXPECT_FALSE(verdict(r, "parseval_deficit").pass);
}

TEST(Sinc, SecondMomentClosedForm) {
  for (double L : {1.0, 2.0})
    for (double K : {50.0, 200.0}) {
      double closed = 2.0 / (kPi * L) * (K - std::sin(K * L) / L);
      EXPECT_NEAR(squared_density_moment(2, K, L) / closed, 1.0, 1e-9);
    }
}

TEST(Sinc, NormalizationAgainstSimpson) {
  for (double K : {50.0, 400.0}) {
    double simp = simpson([](double k) { return box_momentum_density(k, 1.0); }, -K, K, 400000);
    EXPECT_NEAR(squared_density_moment(0, K, 1.0), simp, 1e-9);
    EXPECT_LT(squared_density_moment(0, K, 1.0), 1.0);
  }
  EXPECT_NEAR(box_momentum_density(0.0, 1.0), 1.0 / (2.0 * kPi), 1e-15);
}

TEST(Sinc, ScanVerdicts) {
  for (int n : {0, 1, 2}) {
    SincMomentParams prm;
    prm.n = n;
    ParadoxReport r = sinc_moment_scan(prm);
    EXPECT_TRUE(r.all_pass()) << n;
    ASSERT_EQ(r.tables.size(), 1u);
    EXPECT_EQ(r.tables[0].rows.size(), prm.cutoffs.size());
  }
  ParadoxConfig cfg;
  ParadoxReport merged = run_scenario("sinc_moments", cfg);
  EXPECT_TRUE(merged.all_pass());
  EXPECT_TRUE(merged.quantities.count("n2_worst_linear_growth_defect"));
  SincMomentParams bad;
  bad.n = 3;
  EXPECT_THROW(sinc_moment_scan(bad), std::invalid_argument);
  bad.n = 0;
  bad.cutoffs = {100, 50};
  EXPECT_THROW(sinc_moment_scan(bad), std::invalid_argument);
}

TEST(FiniteWell, NaiveValueMatchesIndependentOracle) {
  // Right-acting expansion on sqrt2 cos(pi x) with analytic derivatives.
  auto f = [](double x) {
    double a = std::sqrt(2.0), c = std::cos(kPi * x), s = std::sin(kPi * x);
    double p0 = a * c, p1 = -a * kPi * s, p2 = -a * kPi * kPi * c, p3 = a * kPi * kPi * kPi * s;
    return -p0 * (16 * x * x * x * p3 + 72 * x * x * p2 + 96 * x * p1 + 24 * p0);
  };
  double oracle = simpson(f, -0.5, 0.5, 20000);
  EXPECT_NEAR(oracle, 4.0 * kPi * kPi, 1e-9);
  EXPECT_NEAR(box_commutator_value(1.0, 0), oracle, 1e-9);
}

TEST(FiniteWell, DeepWellPatternAndShallowDeparture) {
  FiniteWellParams prm;
  ParadoxReport r = finite_well_commutator(prm);
  for (const auto& v : r.verdicts) EXPECT_TRUE(v.pass) << v.name << " " << v.value;
  double c = r.quantities.at("c_naive");
  EXPECT_LT(std::abs(r.quantities.at("total")), 0.05 * std::abs(c));
  EXPECT_NEAR(r.quantities.at("inside") / c, 1.0, 0.1);
  EXPECT_NEAR(r.quantities.at("outside") / c, 1.0, 0.1);
  EXPECT_NEAR(r.quantities.at("boundary") / c, -2.0, 0.2);
  EXPECT_GT(r.quantities.at("shallow_residual"), 0.1);
}

TEST(FiniteWell, BoundStatesAndValidation) {
  FiniteWellParams prm;
  prm.n_inside = 401;
  WellState ws = finite_well_state(1000.0, prm);
  double h = ws.h;
  EXPECT_NEAR(h * ws.psi.squaredNorm(), 1.0, 1e-10);
  // Deep-well ground energy approaches the box value pi^2 / 2 from below.
  EXPECT_LT(ws.energy, 0.5 * kPi * kPi);
  EXPECT_GT(ws.energy, 0.4 * kPi * kPi);
  // Depth 10 binds two levels: sqrt(2 V0) L / 2 lies between pi/2 and pi.
  prm.eigen_index = 1;
  EXPECT_LT(finite_well_state(10.0, prm).energy, 10.0);
  prm.eigen_index = 2;
  EXPECT_THROW(finite_well_state(10.0, prm), std::domain_error);
  prm.eigen_index = 0;
  prm.n_inside = 400;
  EXPECT_THROW(finite_well_state(10.0, prm), std::invalid_argument);
  FiniteWellParams desc;
  desc.depths = {100, 10};
  EXPECT_THROW(finite_well_commutator(desc), std::invalid_argument);
}

TEST(EnergyVariance, RoutesAgainstClosedForm) {
  EnergyVarianceParams prm;
  ParadoxReport r = energy_variance_example(prm);
  EXPECT_TRUE(r.all_pass());
  // Parabola sqrt30 x(L - x) / L^{5/2}: <P^2> = 10 / L^2 and Var(P^2) = 20 / L^4.
  EXPECT_NEAR(r.quantities.at("p2_variance") / 20.0, 1.0, 0.01);
  EXPECT_NEAR(r.quantities.at("p2_mean"), 10.0, 1e-3);
  EXPECT_NEAR(r.quantities.at("energy_variance"), r.quantities.at("p2_variance") / 4.0, 1e-12);
  prm.L = 2.0;
  ParadoxReport r2 = energy_variance_example(prm);
  EXPECT_NEAR(r2.quantities.at("p2_variance") / (20.0 / 16.0), 1.0, 0.01);
  EXPECT_LT(std::abs(r2.quantities.at("p4_naive")), 1e-6 * r2.quantities.at("p2_sq_norm"));
}

TEST(Report, SingleScenarioWritesOneJson) {
  auto dir = scratch("single");
  ParadoxConfig cfg;
  cfg.scenarios = {"energy_variance"};
  ParadoxRunResult res = run_report(cfg, dir.string());
  EXPECT_TRUE(res.all_pass);
  EXPECT_TRUE(std::filesystem::exists(dir / "energy_variance.json"));
  EXPECT_FALSE(std::filesystem::exists(dir / "summary.json"));
  Json j = Json::parse(slurp(dir / "energy_variance.json"));
  EXPECT_EQ(j["name"], "energy_variance");
  std::filesystem::remove_all(dir);
}

TEST(Report, FailingVerdictIsNamed) {
  auto dir = scratch("failing");
  ParadoxConfig cfg;
  cfg.scenarios = {"constant_wf"};
  cfg.constant_wf.m_max = 10;
  ParadoxRunResult res = run_report(cfg, dir.string());
  EXPECT_FALSE(res.all_pass);
  ASSERT_FALSE(res.failing.empty());
  EXPECT_NE(std::find(res.failing.begin(), res.failing.end(), "constant_wf.parseval_deficit"), res.failing.end());
  std::filesystem::remove_all(dir);
}

TEST(Report, ConfigParsingAndDeterminism) {
  Json cfg = Json::parse(R"({"scenarios": ["constant_wf", "sinc_moments"], "constant_wf": {"m_max": 2000}})");
  ParadoxConfig c = paradox_config_from_json(cfg);
  EXPECT_EQ(c.scenarios.size(), 2u);
  EXPECT_EQ(c.constant_wf.m_max, 2000);
  EXPECT_THROW(paradox_config_from_json(Json::parse(R"({"bogus": 1})")), std::invalid_argument);
  EXPECT_THROW(run_scenario("nope", c), std::invalid_argument);

  auto a = scratch("det_a"), b = scratch("det_b");
  ParadoxRunResult ra = run_report(c, a.string());
  run_report(c, b.string());
  EXPECT_TRUE(std::filesystem::exists(a / "summary.json"));
  for (const auto& f : ra.files) {
    auto name = std::filesystem::path(f).filename();
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}
