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

#include <cmath>

#include "hilbertpairs/coherent.hpp"
#include "hilbertpairs/philox.hpp"
#include "hilbertpairs/weak.hpp"

using namespace hp;

namespace {

StateVector vacuum(int d) {
  Vec v = Vec::Zero(d);
  v[0] = 1.0;
  return make_state(fock_space(d), v);
}

StateVector coherent_input(cplx a, int d) { return coherent_state(a, d).state.normalized(); }

}  // namespace

TEST(Philox, KnownAnswerVectors) {
  using C = Philox4x32::ctr_type;
  using K = Philox4x32::key_type;
  EXPECT_EQ(Philox4x32::block(C{0, 0, 0, 0}, K{0, 0}), (C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(Philox4x32::block(C{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, K{0xffffffffu, 0xffffffffu}),
            (C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(Philox4x32::block(C{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, K{0xa4093822u, 0x299f31d0u}),
            (C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Philox, StreamsAreReproducibleAndDistinct) {
  PhiloxStream a(42, 3), b(42, 3), c(42, 4), e(43, 3);
  for (int i = 0; i < 100; ++i) {
    auto x = a.normal_pair();
    EXPECT_EQ(x, b.normal_pair());
    EXPECT_NE(x, c.normal_pair());
    EXPECT_NE(x, e.normal_pair());
  }
  EXPECT_EQ(a.counter(), 100u);
}

TEST(Philox, NormalMoments) {
  PhiloxStream s(7, 0);
  const int n = 200000;
  double m1 = 0, m2 = 0, cross = 0;
  for (int i = 0; i < n; ++i) {
    auto [u, v] = s.normal_pair();
    m1 += u + v;
    m2 += u * u + v * v;
    cross += u * v;
  }
  EXPECT_NEAR(m1 / (2.0 * n), 0.0, 5e-3);
  EXPECT_NEAR(m2 / (2.0 * n), 1.0, 1e-2);
  EXPECT_NEAR(cross / n, 0.0, 1e-2);
}

TEST(Quadratures, TruncatedCommutator) {
  FockQuadratures q = fock_quadratures(12);
  EXPECT_LT(q.X.meta.hermitian_tol, 1e-15);
  EXPECT_LT(q.P.meta.hermitian_tol, 1e-15);
  Mat c = q.X.matrix * q.P.matrix - q.P.matrix * q.X.matrix;
  // Exact i on all but the last level, where truncation gives -i (d - 1).
  for (int k = 0; k < 11; ++k) EXPECT_NEAR(std::abs(c(k, k) - kI), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(c(11, 11) + 11.0 * kI), 0.0, 1e-13);
  EXPECT_THROW(fock_quadratures(1), std::invalid_argument);
}

TEST(Kraus, IncrementLimits) {
  FockQuadratures q = fock_quadratures(10);
  KrausElement k0 = kraus_increment(1e-300, 0.0, 0.0, q.X, q.P);
  EXPECT_LT(max_abs(k0.op.matrix - Mat::Identity(10, 10)), 1e-14);
  // Second-order Taylor oracle.
  double dt = 1e-4, dx = 3e-3, dp = -2e-3;
  Mat e = dx * q.X.matrix + dp * q.P.matrix - dt * (q.X.matrix * q.X.matrix + q.P.matrix * q.P.matrix);
  Mat taylor = Mat::Identity(10, 10) + e + 0.5 * e * e;
  KrausElement k = kraus_increment(dt, dx, dp, q.X, q.P);
  // The remainder is bounded by the cubic term.
  double en = op_norm(e);
  EXPECT_LT(max_abs(k.op.matrix - taylor), en * en * en);
  EXPECT_GT(max_abs(k.op.matrix - Mat(Mat::Identity(10, 10) + e)), 0.1 * en * en);
  EXPECT_LT(k.op.meta.hermitian_tol, 1e-12);
  Eigen::SelfAdjointEigenSolver<Mat> es(k.op.matrix);
  EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
  EXPECT_THROW(kraus_increment(0.0, 0.0, 0.0, q.X, q.P), std::invalid_argument);
  FockQuadratures other = fock_quadratures(11);
  EXPECT_THROW(kraus_increment(dt, dx, dp, q.X, other.P), std::invalid_argument);
}

TEST(Stepper, MatchesDenseExponential) {
  for (int d : {4, 12, 30}) {
    FockQuadratures q = fock_quadratures(d);
    FockKrausStepper st(d);
    EXPECT_EQ(st.dim(), d);
    PhiloxStream rng(5, d);
    Mat m(d, 5);
    for (int c = 0; c < 5; ++c)
      for (int r = 0; r < d; ++r) {
        auto [a, b] = rng.normal_pair();
        m(r, c) = cplx(a, b);
      }
    for (double dt : {1e-3, 1e-2}) {
      auto [z1, z2] = rng.normal_pair();
      double dwx = std::sqrt(dt) * z1, dwp = std::sqrt(dt) * z2;
      Mat dense = kraus_increment(dt, dwx, dwp, q.X, q.P).op.matrix * m;
      Mat fast = m;
      st.apply(dt, dwx, dwp, fast);
      EXPECT_LT(max_abs(fast - dense) / max_abs(dense), 1e-13) << d << " " << dt;
    }
  }
}

TEST(Trajectory, DeterministicForFixedSeed) {
  TrajectoryParams p;
  p.T = 0.5;
  p.fock_dim = 16;
  p.seed = 99;
  p.index = 3;
  p.record_every = 10;
  TrajectoryRecord a = run_trajectory(vacuum(16), p);
  TrajectoryRecord b = run_trajectory(vacuum(16), p);
  ASSERT_EQ(a.series.size(), 50u);
  for (size_t i = 0; i < a.series.size(); ++i) {
    EXPECT_EQ(a.series[i].dW_X, b.series[i].dW_X);
    EXPECT_EQ(a.series[i].purity, b.series[i].purity);
  }
  EXPECT_EQ(a.final_element, b.final_element);
  EXPECT_EQ(a.unnormalized_element, b.unnormalized_element);
  p.index = 4;
  TrajectoryRecord c = run_trajectory(vacuum(16), p);
  EXPECT_NE(c.series[0].dW_X, a.series[0].dW_X);
  EXPECT_NEAR(a.final_element.trace().real(), 1.0, 1e-12);
}

TEST(Trajectory, IncrementStatistics) {
  TrajectoryParams p;
  p.T = 10.0;
  p.fock_dim = 12;
  p.seed = 2024;
  TrajectoryRecord r = run_trajectory(vacuum(12), p);
  ASSERT_EQ(r.series.size(), 10000u);
  double vx = 0, vp = 0, cxp = 0;
  for (const auto& s : r.series) {
    vx += s.dW_X * s.dW_X;
    vp += s.dW_P * s.dW_P;
    cxp += s.dW_X * s.dW_P;
  }
  double n = static_cast<double>(r.series.size());
  EXPECT_NEAR(vx / n / p.dt, 1.0, 0.05);
  EXPECT_NEAR(vp / n / p.dt, 1.0, 0.05);
  EXPECT_NEAR(cxp / std::sqrt(vx * vp), 0.0, 0.05);
}

TEST(Trajectory, ElementPurifiesTowardCoherentProjector) {
  TrajectoryParams p;
  p.T = 3.0;
  p.fock_dim = 30;
  p.seed = 11;
  p.record_every = 100;
  StateVector psi = coherent_input(1.0, 30);
  for (int i = 0; i < 3; ++i) {
    p.index = i;
    TrajectoryRecord r = run_trajectory(psi, p);
    ASSERT_TRUE(r.valid);
    EXPECT_GT(r.series.back().purity, 0.99);
    CoherentFit fit = coherent_fit(r.final_element);
    EXPECT_GT(fit.overlap, 0.95);
  }
}

TEST(Ensemble, MonotoneFractionAndImpuritySlope) {
  TrajectoryParams p;
  p.T = 2.0;
  p.fock_dim = 24;
  p.seed = 5;
  p.record_every = 20;
  int seen = 0;
  EnsembleSummary s = run_ensemble(vacuum(24), p, 12, 8, [&](int i, const TrajectoryRecord& r) {
    EXPECT_EQ(r.index, static_cast<std::uint64_t>(i));
    ++seen;
  });
  EXPECT_EQ(seen, 12);
  EXPECT_EQ(s.invalid, 0);
  EXPECT_GE(s.monotone_fraction, 0.9);
  ASSERT_EQ(s.times.size(), s.median_log_impurity.size());
  ASSERT_GE(s.times.size(), 10u);
  // Least-squares slope of the median log impurity over the second half.
  size_t h = s.times.size() / 2;
  double mt = 0, ml = 0;
  for (size_t i = h; i < s.times.size(); ++i) {
    mt += s.times[i];
    ml += s.median_log_impurity[i];
  }
  double k = static_cast<double>(s.times.size() - h);
  mt /= k;
  ml /= k;
  double num = 0, den = 0;
  for (size_t i = h; i < s.times.size(); ++i) {
    num += (s.times[i] - mt) * (s.median_log_impurity[i] - ml);
    den += (s.times[i] - mt) * (s.times[i] - mt);
  }
  EXPECT_LT(num / den, 0.0);
  EXPECT_THROW(run_ensemble(vacuum(24), p, 0), std::invalid_argument);
  EXPECT_THROW(run_ensemble(vacuum(24), p, 2, 25), std::invalid_argument);
}

TEST(Ensemble, MonotoneCriterion) {
  std::vector<TrajectorySample> rise(10), dip(10);
  for (int i = 0; i < 10; ++i) {
    rise[i].purity = 0.1 * i;
    dip[i].purity = i == 8 ? 0.0 : 0.1 * i;
  }
  EXPECT_TRUE(eventually_monotone(rise));
  EXPECT_FALSE(eventually_monotone(dip));
  dip[8].purity = 0.75;
  dip[2].purity = 0.9;
  EXPECT_TRUE(eventually_monotone(dip));
}

TEST(Trajectory, TruncationGuardAndInputChecks) {
  TrajectoryParams p;
  p.T = 0.05;
  p.fock_dim = 10;
  TrajectoryRecord r = run_trajectory(coherent_input(3.0, 10), p);
  EXPECT_FALSE(r.valid);
  EXPECT_GE(r.max_mean_number, 5.0);
  Vec v = Vec::Zero(10);
  v[0] = 2.0;
  EXPECT_THROW(run_trajectory(make_state(fock_space(10), v), p), std::invalid_argument);
  EXPECT_THROW(run_trajectory(vacuum(12), p), std::invalid_argument);
  p.physical_block = 11;
  EXPECT_THROW(run_trajectory(vacuum(10), p), std::invalid_argument);
}

TEST(Physical, EstimateHasBlockTrace) {
  TrajectoryParams p;
  p.T = 0.5;
  p.fock_dim = 20;
  p.seed = 8;
  p.record_every = 50;
  PhysicalEstimate e = physical_completeness_estimate(p, 4, 6);
  EXPECT_EQ(e.trajectories, 4);
  EXPECT_NEAR(e.mean_element.topLeftCorner(6, 6).trace().real(), 6.0, 1e-10);
  EXPECT_GE(e.deviation, 0.0);
}

TEST(LieClosure, StructureConstants) {
  int d = 20;
  FockQuadratures q = fock_quadratures(d);
  LieClosureReport r = lie_closure_check(q.X, q.P, d, 12);
  EXPECT_LT(r.max_residual, 1e-6);
  EXPECT_EQ(r.entries.size(), 21u);
  auto find = [&](int i, int j) {
    for (const auto& e : r.entries)
      if (e.i == i && e.j == j) return e;
    return LieClosureReport::Entry{};
  };
  // Basis: 1, i1, X, P, iX, iP, X^2 + P^2.
  auto xp = find(2, 3);
  EXPECT_NEAR(xp.coefficients[1], 1.0, 1e-12);
  auto xh = find(2, 6);
  EXPECT_NEAR(xh.coefficients[5], 2.0, 1e-12);
  auto ph = find(3, 6);
  EXPECT_NEAR(ph.coefficients[4], -2.0, 1e-12);
  for (const auto& e : r.entries)
    if (e.i == 0) EXPECT_LT(e.residual, 1e-14);
  EXPECT_THROW(lie_closure_check(q.X, q.P, d, 17), std::invalid_argument);
  EXPECT_THROW(lie_closure_check(q.X, q.P, d + 1, 4), std::invalid_argument);
}

TEST(CoherentFit, RecoversKnownAmplitude) {
  cplx a(0.8, -1.3);
  Vec v = coherent_amplitudes(a, 30);
  CoherentFit f = coherent_fit(v * v.adjoint());
  EXPECT_NEAR(f.overlap, 1.0, 1e-8);
  EXPECT_NEAR(std::abs(f.alpha - a), 0.0, 1e-4);
}
