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
#include <set>

#include "hilbertpairs/canonical.hpp"
#include "hilbertpairs/measure.hpp"

using namespace hp;

namespace {

StateVector gaussian(const DomainSpec& d, double x0, double width) {
  RVec x = d.points();
  Vec a = (-(x.array() - x0).square() / (2.0 * width * width)).exp().cast<cplx>().matrix();
  return make_state(d, a).normalized();
}

double commutator_residual(const LinearOperator& X, const LinearOperator& P, const StateVector& psi) {
  Vec v = X.matrix * (P.matrix * psi.amplitudes) - P.matrix * (X.matrix * psi.amplitudes) - kI * psi.amplitudes;
  return v.norm() / psi.amplitudes.norm();
}

RVec sorted_eigenvalues(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// Distance from each target to the nearest eigenvalue.
double spectrum_mismatch(const RVec& ev, const std::vector<double>& targets) {
  double worst = 0.0;
  for (double t : targets) {
    double best = 1e300;
    for (int i = 0; i < ev.size(); ++i) best = std::min(best, std::abs(ev[i] - t));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST(Position, DiagonalCoordinates) {
  LinearOperator x = position_operator(interval(1.0, 4));
  EXPECT_EQ(x.meta.hermitian_tol, 0.0);
  std::vector<double> e = {0.125, 0.375, 0.625, 0.875};
  for (int j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(x.matrix(j, j).real(), e[j]);
  EXPECT_EQ(max_abs(x.matrix - Mat(x.matrix.diagonal().asDiagonal())), 0.0);

  LinearOperator xz = position_operator(lattice_z(1.0, 0.0, 3, -1));
  EXPECT_DOUBLE_EQ(xz.matrix(0, 0).real(), -1.0);
  EXPECT_DOUBLE_EQ(xz.matrix(1, 1).real(), 0.0);
  EXPECT_DOUBLE_EQ(xz.matrix(2, 2).real(), 1.0);

  LinearOperator x6 = position_operator(finite_dim(3));
  for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(x6.matrix(j, j).real(), j);
}

TEST(MomentumLine, PlaneWaveIsEigenvector) {
  DomainSpec d = real_line(5.0, 128);
  LinearOperator p = momentum_line(d);
  EXPECT_LT(p.meta.hermitian_tol, 1e-10);
  for (int q : {-7, 1, 13}) {
    double k = 2.0 * kPi * q / (2.0 * d.x_max);
    Vec v(d.size());
    for (int j = 0; j < d.size(); ++j) v[j] = std::polar(1.0, k * d.point(j));
    EXPECT_LT((p.matrix * v - k * v).norm() / v.norm(), 1e-8);
  }
  RVec ev = sorted_eigenvalues(p.matrix);
  double band = kPi / d.spacing();
  EXPECT_GE(ev.minCoeff(), -band - 1e-9);
  EXPECT_LE(ev.maxCoeff(), band + 1e-9);
  EXPECT_THROW(momentum_line(interval(1.0, 16)), std::invalid_argument);
}

TEST(MomentumLine, GroundStateKineticMoment) {
  DomainSpec d = real_line(10.0, 256);
  LinearOperator p = momentum_line(d);
  LinearOperator p2 = make_operator(d, p.matrix * p.matrix);
  RVec x = d.points();
  Vec a = (-0.5 * x.array().square()).exp().cast<cplx>().matrix();
  // Oracle: integral of |psi'|^2 for the analytic Gaussian, which is 1/2.
  EXPECT_NEAR(expectation(p2, make_state(d, a).normalized()).real(), 0.5, 1e-8);
}

TEST(MomentumLine, CentralDifferenceCommutatorConvergesAtSecondOrder) {
  std::vector<double> res;
  for (int n : {64, 128, 256}) {
    DomainSpec d = real_line(8.0, n);
    LinearOperator x = position_operator(d);
    LinearOperator p = momentum_line(d, DerivativeScheme::CentralDifference);
    EXPECT_LT(p.meta.hermitian_tol, 1e-10);
    res.push_back(commutator_residual(x, p, gaussian(d, 0.0, 1.0)));
  }
  for (int k = 0; k < 2; ++k) {
    EXPECT_GE(res[k] / res[k + 1], 3.5);
    EXPECT_LE(res[k] / res[k + 1], 4.5);
  }
}

TEST(MomentumLine, SpectralCommutatorIsSmallOnInteriorStates) {
  DomainSpec d = real_line(8.0, 128);
  EXPECT_LT(commutator_residual(position_operator(d), momentum_line(d), gaussian(d, 0.0, 1.0)), 1e-9);
}

TEST(IntervalExtension, ConstantIsZeroModeAtZeroAngle) {
  DomainSpec d = interval(1.0, 128);
  LinearOperator p = momentum_interval_extension(d, {0.0, 16});
  EXPECT_LT(p.meta.hermitian_tol, 1e-10);
  Vec c = Vec::Constant(128, 1.0);
  EXPECT_LT((p.matrix * c).norm() / c.norm(), 1e-10);
  Vec w(128);
  for (int j = 0; j < 128; ++j) w[j] = std::polar(1.0, 2.0 * kPi * d.point(j));
  EXPECT_LT((p.matrix * w - 2.0 * kPi * w).norm() / w.norm(), 1e-8);
}

TEST(IntervalExtension, AntiperiodicSpectrum) {
  LinearOperator p = momentum_interval_extension(interval(1.0, 128), {kPi, 8});
  RVec ev = sorted_eigenvalues(p.matrix);
  EXPECT_LT(spectrum_mismatch(ev, {-kPi, kPi, 3 * kPi, -3 * kPi, 17 * kPi, -15 * kPi}), 1e-8);
}

TEST(IntervalExtension, SpectrumMatchesFamilyFormula) {
  for (double theta : {0.0, kPi / 3, kPi})
    for (double L : {1.0, 2.5}) {
      ExtensionParams ext{theta, 16};
      LinearOperator p = momentum_interval_extension(interval(L, 128), ext);
      std::vector<double> t;
      for (int m = -16; m <= 16; ++m) t.push_back((2.0 * kPi * m + theta) / L);
      EXPECT_LT(spectrum_mismatch(sorted_eigenvalues(p.matrix), t), 1e-8) << theta << " " << L;
      EXPECT_DOUBLE_EQ(extension_momentum(ext, L, 3), (6.0 * kPi + theta) / L);
    }
}

TEST(IntervalExtension, EigenvaluesShiftWithAngle) {
  DomainSpec d = interval(2.0, 128);
  Mat q0 = interval_momentum_basis(d, {0.2, 12});
  Mat q1 = interval_momentum_basis(d, {0.9, 12});
  LinearOperator p0 = momentum_interval_extension(d, {0.2, 12});
  LinearOperator p1 = momentum_interval_extension(d, {0.9, 12});
  // Compare on the resolved band, where the spectra are {p_m}.
  RVec e0 = sorted_eigenvalues(q0.adjoint() * p0.matrix * q0);
  RVec e1 = sorted_eigenvalues(q1.adjoint() * p1.matrix * q1);
  for (int i = 0; i < e0.size(); ++i) EXPECT_NEAR(e1[i] - e0[i], 0.7 / 2.0, 1e-8);
}

TEST(IntervalExtension, AliasingGuard) {
  EXPECT_THROW(momentum_interval_extension(interval(1.0, 64), {0.0, 16}), std::invalid_argument);
  EXPECT_NO_THROW(momentum_interval_extension(interval(1.0, 68), {0.0, 16}));
  EXPECT_THROW(momentum_interval_extension(real_line(1.0, 64), {0.0, 4}), std::invalid_argument);
}

TEST(HalfLine, FamilyCompletenessOnResolvedSubspace) {
  DomainSpec d = half_line(40.0, 400);
  double p_max = 0.8 * kPi / d.spacing();
  std::vector<double> ps;
  for (int i = 0; i <= 1600; ++i) ps.push_back(-p_max + 2.0 * p_max * i / 1600);
  MeasureFamily fam = momentum_povm_halfline(d, ps);
  EXPECT_EQ(fam.family_kind, FamilyKind::General);
  EXPECT_LT(fam.completeness_deviation, 0.05);
  for (size_t i = 0; i < fam.elements.size(); i += 97)
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Mat>(fam.elements[i].op(), Eigen::EigenvaluesOnly).eigenvalues().minCoeff(),
              -1e-10);
  EXPECT_GT(band_product_norm(fam, -1.0, 0.0, 1.0), 0.01);
  EXPECT_GT(band_product_norm(fam, 2.0, 3.0, 4.0), 0.01);
}

TEST(HalfLine, OverlapImaginaryPartMatchesPrincipalValue) {
  DomainSpec d = half_line(40.0, 4000);
  double eps = default_abel_damping(d);
  for (double p : {-1.0, 0.5, 2.0})
    for (double q : {2.0, 3.0, 5.0}) {
      double im = halfline_overlap(d, p + q, p, eps).imag();
      double expect = 1.0 / (2.0 * kPi * q);
      EXPECT_LT(std::abs(im / expect - 1.0), 0.10) << p << " " << q;
    }
}

TEST(HalfLine, RejectsBadSamples) {
  DomainSpec d = half_line(10.0, 64);
  EXPECT_THROW(momentum_povm_halfline(d, {}), std::invalid_argument);
  EXPECT_THROW(momentum_povm_halfline(d, {1.0, 0.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(momentum_povm_halfline(real_line(1.0, 16), {0.0, 1.0}), std::invalid_argument);
}

TEST(LatticeN, HalfFourierFamilyIsComplete) {
  DomainSpec d = lattice_n(1.0, 32);
  std::vector<double> ps;
  for (int i = 0; i <= 512; ++i) ps.push_back(-kPi + 2.0 * kPi * i / 512);
  MeasureFamily fam = momentum_povm_halfline(d, ps);
  EXPECT_LT(fam.completeness_deviation, 1e-10);
  EXPECT_FALSE(validate_family(fam).projective);
}

TEST(DualPair, LatticeSpectrumAndZeroMode) {
  DualPair dp = dual_pair_lattice(lattice_z(1.0, 0.0, 64));
  EXPECT_LT(dp.X.meta.hermitian_tol, 1e-10);
  EXPECT_LT(dp.P.meta.hermitian_tol, 1e-10);
  RVec ev = sorted_eigenvalues(dp.P.matrix);
  EXPECT_LE(ev.maxCoeff(), kPi + 1e-12);
  EXPECT_GE(ev.minCoeff(), -kPi - 1e-12);
  Vec c = Vec::Constant(64, 1.0);
  EXPECT_LT((dp.P.matrix * c).norm(), 1e-10);

  DualPair five = dual_pair_lattice(lattice_z(1.0, 0.5, 5));
  std::vector<double> e = {-1.5, -0.5, 0.5, 1.5, 2.5};
  for (int j = 0; j < 5; ++j) EXPECT_DOUBLE_EQ(five.X.matrix(j, j).real(), e[j]);
  EXPECT_THROW(dual_pair_lattice(finite_dim(4)), std::invalid_argument);
}

TEST(Weyl, TrivialParametersAgree) {
  DomainSpec d = real_line(8.0, 96);
  LinearOperator x = position_operator(d), p = momentum_line(d);
  std::vector<StateVector> st = {gaussian(d, 0.0, 1.0), gaussian(d, 1.0, 0.7)};
  EXPECT_LT(weyl_check_line(x, p, 0.0, 0.4, st).max_deviation, 1e-12);
  EXPECT_LT(weyl_check_line(x, p, 0.4, 0.0, st).max_deviation, 1e-12);
  DomainSpec di = interval(1.0, 128);
  LinearOperator xi = position_operator(di), pi = momentum_interval_extension(di, {0.0, 16});
  std::vector<StateVector> si = {gaussian(di, 0.5, 0.1)};
  EXPECT_LT(weyl_check_interval(xi, pi, 0.0, 0.4, si).max_deviation, 1e-12);
}

TEST(Weyl, LineRelationHoldsOnInteriorStates) {
  // The spectral pair is exact on band-limited periodic data, so the deviation
  // sits at rounding level on every grid.
  for (int n : {64, 128, 256}) {
    DomainSpec d = real_line(8.0, n);
    WeylCheckReport r = weyl_check_line(position_operator(d), momentum_line(d), 0.3, 0.3,
                                        {gaussian(d, 0.0, 1.0), gaussian(d, -0.5, 0.8)});
    EXPECT_LT(r.max_deviation, 1e-10) << n;
  }
  DomainSpec d = real_line(8.0, 128);
  // A state translated through the box edge picks up the periodic seam.
  WeylCheckReport edge = weyl_check_line(position_operator(d), momentum_line(d), 2.0, 0.3, {gaussian(d, -6.5, 0.7)});
  EXPECT_GT(edge.max_deviation, 1e-3);
}

TEST(Weyl, IntervalNeedsWrapCorrection) {
  DomainSpec d = interval(1.0, 256);
  LinearOperator x = position_operator(d), p = momentum_interval_extension(d, {0.0, 16});
  // A state near 0.3 is carried past the wall by s = 0.6 with wrap integer 1.
  std::vector<StateVector> st = {gaussian(d, 0.3, 0.1), gaussian(d, 0.25, 0.08)};
  WeylCheckReport r = weyl_check_interval(x, p, 0.6, kPi, st);
  EXPECT_GT(r.naive_deviation, 0.5);
  EXPECT_LT(r.max_deviation, 1e-2);
  std::set<long> seen;
  for (int j = 0; j < d.size(); ++j) {
    double u = d.point(j) + 0.6 - r.wrap_integers[j] * 1.0;
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    seen.insert(r.wrap_integers[j]);
  }
  EXPECT_EQ(seen, (std::set<long>{0, 1}));
}

TEST(DiscreteWeyl, QubitCaseIsPauliUpToPhase) {
  DiscreteWeyl w = discrete_weyl(2);
  Mat sx(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;
  auto phase_equal = [](const Mat& a, const Mat& b) {
    int k = 0;
    while (std::abs(b(k / 2, k % 2)) < 0.5) ++k;
    cplx ph = a(k / 2, k % 2) / b(k / 2, k % 2);
    return std::abs(std::abs(ph) - 1.0) < 1e-12 && max_abs(a - ph * b) < 1e-12;
  };
  EXPECT_TRUE(phase_equal(w.shift.matrix, sx));
  EXPECT_TRUE(phase_equal(w.clock.matrix, sz));
}

TEST(DiscreteWeyl, RelationHoldsForAllPowers) {
  for (int D : {2, 3, 5, 8, 16}) {
    DiscreteWeyl w = discrete_weyl(D);
    EXPECT_LT(w.shift.meta.unitary_tol, 1e-12);
    EXPECT_LT(w.clock.meta.unitary_tol, 1e-12);
    for (int n = 0; n < D; ++n)
      for (int m = 0; m < D; ++m) EXPECT_LT(relation_deviation(w, n, m), 1e-12) << D << " " << n << " " << m;
  }
  DiscreteWeyl five = discrete_weyl(5);
  EXPECT_EQ(relation_deviation(five, 0, 3), 0.0);
  // Oracle for D = 5, n = 2, m = 3: explicit phase e^{-12 pi i / 5}.
  Mat lhs = five.shift.matrix * five.shift.matrix * five.clock.matrix * five.clock.matrix * five.clock.matrix;
  Mat rhs = std::polar(1.0, -12.0 * kPi / 5.0) * five.clock.matrix * five.clock.matrix * five.clock.matrix *
            five.shift.matrix * five.shift.matrix;
  EXPECT_LT(op_norm(lhs - rhs), 1e-12);
  EXPECT_THROW(discrete_weyl(1), std::invalid_argument);
}

TEST(DiscreteWeyl, ShiftMovesBasisLabels) {
  DiscreteWeyl w = discrete_weyl(6);
  for (int n = 0; n < 6; ++n) {
    Vec e = Vec::Zero(6);
    e[n] = 1.0;
    Vec s = w.shift.matrix * e;
    EXPECT_NEAR(std::abs(s[(n + 1) % 6]), 1.0, 1e-12);
  }
}

TEST(Deficiency, IndicesPerDomain) {
  DeficiencyReport line = deficiency_evidence(DomainKind::RealLine);
  EXPECT_EQ(line.n_plus, 0);
  EXPECT_EQ(line.n_minus, 0);
  DeficiencyReport half = deficiency_evidence(DomainKind::HalfLine);
  EXPECT_NE(half.n_plus, half.n_minus);
  EXPECT_EQ(half.n_plus + half.n_minus, 1);
  EXPECT_EQ(half.n_plus, 1);
  EXPECT_EQ(half.verdict, "no self-adjoint extension");
  DeficiencyReport box = deficiency_evidence(DomainKind::Interval);
  EXPECT_EQ(box.n_plus, 1);
  EXPECT_EQ(box.n_minus, 1);
  EXPECT_EQ(box.verdict, "family of extensions exists");
  EXPECT_EQ(line.verdict, "essentially self-adjoint");
}

TEST(Interleave, BijectionBetweenNaturalsAndIntegers) {
  EXPECT_EQ(interleave_index(0), 0);
  EXPECT_EQ(interleave_index(1), -1);
  EXPECT_EQ(interleave_index(2), 1);
  std::set<long> img;
  for (long n = 0; n <= 1000; ++n) {
    long m = interleave_index(n);
    EXPECT_EQ(interleave_inverse(m), n);
    img.insert(m);
  }
  EXPECT_EQ(img.size(), 1001u);
  EXPECT_EQ(*img.begin(), -500);
  EXPECT_EQ(*img.rbegin(), 500);
  EXPECT_THROW(interleave_index(-1), std::invalid_argument);
}
