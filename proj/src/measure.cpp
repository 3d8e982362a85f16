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

#include "hilbertpairs/measure.hpp"

#include <algorithm>
#include <cmath>

#include "hilbertpairs/philox.hpp"

namespace hp {

Mat MeasureFamily::total() const {
  int n = dim();
  int cols = 0;
  for (const auto& e : elements) cols += static_cast<int>(e.factor.cols());
  Mat g(n, cols);
  int at = 0;
  for (const auto& e : elements) {
    g.middleCols(at, e.factor.cols()) = std::sqrt(e.weight) * e.factor;
    at += static_cast<int>(e.factor.cols());
  }
  return g * g.adjoint();
}

double completeness_deviation(const MeasureFamily& family) {
  Mat t = family.total();
  if (family.resolved.size() == 0)
    return op_norm(t - Mat::Identity(t.rows(), t.cols()));
  const Mat& q = family.resolved;
  Mat r = q.adjoint() * t * q;
  return op_norm(r - Mat::Identity(r.rows(), r.cols()));
}

MeasureFamily finalize_family(MeasureFamily family) {
  family.completeness_deviation = completeness_deviation(family);
  return family;
}

MeasureElement element_from_operator(const Mat& op, double weight, std::vector<double> label) {
  if (op.rows() != op.cols()) throw std::invalid_argument("element operator must be square");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (op + op.adjoint()));
  const RVec& ev = es.eigenvalues();
  double top = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  std::vector<int> keep;
  for (int i = 0; i < ev.size(); ++i)
    if (ev[i] > 1e-14 * top) keep.push_back(i);
  MeasureElement e;
  e.label = std::move(label);
  e.weight = weight;
  e.min_eigenvalue = ev.minCoeff();
  e.factor.resize(op.rows(), static_cast<int>(keep.size()));
  for (size_t c = 0; c < keep.size(); ++c)
    e.factor.col(c) = std::sqrt(ev[keep[c]]) * es.eigenvectors().col(keep[c]);
  return e;
}

namespace {

Mat gram_sqrt(const Mat& f) {
  Eigen::SelfAdjointEigenSolver<Mat> es(f.adjoint() * f);
  RVec s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

FamilyValidation validate_family(const MeasureFamily& family, double tol) {
  if (family.elements.empty()) throw std::invalid_argument("validate_family: empty family");
  FamilyValidation v;
  v.min_eigenvalue = 0.0;
  for (const auto& e : family.elements) {
    v.min_eigenvalue = std::min(v.min_eigenvalue, e.min_eigenvalue);
    if (e.min_eigenvalue < -1e-6)
      throw std::invalid_argument("validate_family: element with negative eigenvalue");
  }
  v.completeness_deviation = completeness_deviation(family);
  v.complete = v.completeness_deviation < tol;

  // ||F_i F_i^+ F_j F_j^+|| = ||S_i (F_i^+ F_j) S_j|| with S = (F^+ F)^{1/2}.
  size_t n = family.elements.size();
  std::vector<Mat> s(n);
  for (size_t i = 0; i < n; ++i) {
    const Mat& f = family.elements[i].factor;
    s[i] = gram_sqrt(f);
    Mat g = f.adjoint() * f;
    v.max_idempotency_defect = std::max(v.max_idempotency_defect, op_norm(g * g - g));
    v.purities.push_back(purity(family.elements[i]));
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      const Mat& fi = family.elements[i].factor;
      const Mat& fj = family.elements[j].factor;
      Mat c = s[i] * (fi.adjoint() * fj) * s[j];
      double val = c.size() == 1 ? std::abs(c(0, 0)) : op_norm(c);
      v.max_pair_product = std::max(v.max_pair_product, val);
    }
  v.projective = v.max_pair_product < 1e-10 && v.max_idempotency_defect < 1e-10;
  return v;
}

double purity(const Mat& element) {
  cplx tr = element.trace();
  if (std::abs(tr) == 0.0) throw std::domain_error("purity: zero trace");
  double t2 = (element * element).trace().real();
  return t2 / (tr.real() * tr.real());
}

double purity(const LinearOperator& element) { return purity(element.matrix); }

double purity(const MeasureElement& element) {
  // Tr(FF^+) = ||F||_F^2 and Tr((FF^+)^2) = ||F^+F||_F^2.
  double tr = element.factor.squaredNorm();
  if (tr == 0.0) throw std::domain_error("purity: zero trace");
  double t2 = (element.factor.adjoint() * element.factor).squaredNorm();
  return t2 / (tr * tr);
}

KrausElement gaussian_position_kraus(double x0, double w, const DomainSpec& domain, double dx0) {
  if (!(w > 0)) throw std::invalid_argument("gaussian_position_kraus: w must be positive");
  if (domain.kind != DomainKind::RealLine && domain.kind != DomainKind::Interval)
    throw std::invalid_argument("gaussian_position_kraus: RealLine or Interval domain");
  int n = domain.size();
  double pre = std::pow(1.0 / (2.0 * kPi * w), 0.25) * std::sqrt(dx0);
  Mat k = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double d = domain.point(j) - x0;
    k(j, j) = pre * std::exp(-d * d / (4.0 * w));
  }
  return KrausElement{make_operator(domain, std::move(k)), {x0}};
}

std::vector<KrausElement> gaussian_position_kraus_set(const std::vector<double>& x0_grid,
                                                      double w, const DomainSpec& domain) {
  std::vector<double> wts = x0_grid.size() > 1 ? std::vector<double>(x0_grid.size(), 0.0)
                                               : std::vector<double>{1.0};
  if (x0_grid.size() > 1) {
    double dx0 = (x0_grid.back() - x0_grid.front()) / (x0_grid.size() - 1);
    std::fill(wts.begin(), wts.end(), dx0);
  }
  std::vector<KrausElement> out;
  out.reserve(x0_grid.size());
  for (size_t i = 0; i < x0_grid.size(); ++i)
    out.push_back(gaussian_position_kraus(x0_grid[i], w, domain, wts[i]));
  return out;
}

MeasureFamily kraus_family(const std::vector<KrausElement>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("kraus_family: empty set");
  MeasureFamily fam;
  fam.domain = kraus.front().op.domain;
  for (const auto& k : kraus) {
    MeasureElement e;
    e.label = k.label;
    e.weight = 1.0;
    // Pi = K^+ K = (K^+)(K^+)^+.
    e.factor = k.op.matrix.adjoint();
    fam.elements.push_back(std::move(e));
  }
  return finalize_family(std::move(fam));
}

PostState apply_kraus(const KrausElement& k, const StateVector& psi) {
  require_same_domain(k.op.domain, psi.domain, "apply_kraus");
  StateVector out{k.op.matrix * psi.amplitudes, psi.domain};
  double p = out.weight() * out.amplitudes.squaredNorm();
  if (p < 1e-14) throw std::domain_error("apply_kraus: outcome probability below 1e-14");
  out.amplitudes /= std::sqrt(p);
  return PostState{std::move(out), p};
}

PostDensity apply_kraus(const KrausElement& k, const Mat& rho) {
  Mat out = k.op.matrix * rho * k.op.matrix.adjoint();
  double p = out.trace().real();
  if (p < 1e-14) throw std::domain_error("apply_kraus: outcome probability below 1e-14");
  return PostDensity{out / p, p};
}

namespace {

long bin_index(double x, double L0, double lambda0) {
  double q = (x - lambda0) / L0;
  return static_cast<long>(std::floor(q + 1e-9));
}

void check_alignment(const DomainSpec& domain, double L0) {
  if (domain.kind != DomainKind::RealLine && domain.kind != DomainKind::Interval)
    throw std::invalid_argument("binned families need a RealLine or Interval domain");
  if (!(L0 > 0)) throw std::invalid_argument("L0 must be positive");
  double cells = L0 / domain.spacing();
  if (std::abs(cells - std::round(cells)) > 1e-9 || std::round(cells) < 1)
    throw std::invalid_argument("L0 must be an integer multiple of the grid spacing");
}

// Complete bins: grid indices grouped by bin, partial edge bins dropped.
std::vector<std::pair<long, std::vector<int>>> complete_bins(const DomainSpec& domain, double L0,
                                                             double lambda0) {
  int per_bin = static_cast<int>(std::lround(L0 / domain.spacing()));
  std::vector<std::pair<long, std::vector<int>>> bins;
  for (int j = 0; j < domain.size(); ++j) {
    long b = bin_index(domain.point(j), L0, lambda0);
    if (bins.empty() || bins.back().first != b) bins.push_back({b, {}});
    bins.back().second.push_back(j);
  }
  std::erase_if(bins, [&](const auto& b) { return static_cast<int>(b.second.size()) != per_bin; });
  return bins;
}

Mat covered_basis(const DomainSpec& domain,
                  const std::vector<std::pair<long, std::vector<int>>>& bins) {
  int count = 0;
  for (const auto& b : bins) count += static_cast<int>(b.second.size());
  Mat q = Mat::Zero(domain.size(), count);
  int c = 0;
  for (const auto& b : bins)
    for (int j : b.second) q(j, c++) = 1.0;
  return q;
}

}  // namespace

MeasureFamily coarse_position_family(const DomainSpec& domain, double L0, double lambda0) {
  check_alignment(domain, L0);
  auto bins = complete_bins(domain, L0, lambda0);
  if (bins.empty()) throw std::invalid_argument("no complete bin fits in the domain");
  MeasureFamily fam;
  fam.domain = domain;
  fam.family_kind = FamilyKind::Projective;
  double amp = std::sqrt(domain.spacing() / L0);
  for (const auto& [m, idx] : bins) {
    MeasureElement e;
    e.label = {static_cast<double>(m)};
    e.weight = 1.0;
    e.factor = Mat::Zero(domain.size(), 1);
    for (int j : idx) e.factor(j, 0) = amp;
    fam.elements.push_back(std::move(e));
  }
  // Completeness holds on the span of the binned states, the space resolved at scale L0.
  fam.resolved.resize(domain.size(), static_cast<int>(fam.elements.size()));
  for (size_t i = 0; i < fam.elements.size(); ++i) fam.resolved.col(i) = fam.elements[i].factor.col(0);
  return finalize_family(std::move(fam));
}

MeasureFamily binned_phase_space_family(const DomainSpec& domain, double L0, double lambda0,
                                        int samples_per_period) {
  check_alignment(domain, L0);
  if (samples_per_period < 1) throw std::invalid_argument("samples_per_period must be >= 1");
  auto bins = complete_bins(domain, L0, lambda0);
  if (bins.empty()) throw std::invalid_argument("no complete bin fits in the domain");
  double h = domain.spacing();
  double dp = 2.0 * kPi / (L0 * samples_per_period);
  int n_p = static_cast<int>(std::lround((2.0 * kPi / h) / dp));
  MeasureFamily fam;
  fam.domain = domain;
  fam.family_kind = FamilyKind::General;
  double amp = std::sqrt(h / L0);
  double w = L0 / (2.0 * kPi) * dp;
  for (const auto& [m, idx] : bins) {
    for (int k = 0; k < n_p; ++k) {
      double p = -kPi / h + k * dp;
      MeasureElement e;
      e.label = {static_cast<double>(m), p};
      e.weight = w;
      e.factor = Mat::Zero(domain.size(), 1);
      for (int j : idx) e.factor(j, 0) = amp * std::polar(1.0, p * domain.point(j));
      fam.elements.push_back(std::move(e));
    }
  }
  fam.resolved = covered_basis(domain, bins);
  return finalize_family(std::move(fam));
}

DilationResult neumark_dilate(const MeasureFamily& family, double rank_tol,
                              double completeness_tol) {
  int d = family.dim();
  int n = static_cast<int>(family.elements.size());
  if (n < d) throw std::invalid_argument("neumark_dilate: need at least d outcomes");
  Mat v(n, d);
  for (int i = 0; i < n; ++i) {
    const auto& e = family.elements[i];
    if (e.factor.cols() < 1) throw std::invalid_argument("neumark_dilate: empty element");
    if (std::abs(1.0 - purity(e)) > rank_tol)
      throw std::invalid_argument("neumark_dilate: element is not rank one");
    // Rank one: weight * F F^+ = u u^+ with u the dominant column direction.
    Eigen::SelfAdjointEigenSolver<Mat> es(e.weight * e.op());
    Vec u = std::sqrt(std::max(es.eigenvalues()(d - 1), 0.0)) * es.eigenvectors().col(d - 1);
    v.row(i) = u.adjoint();
  }
  double defect = max_abs(v.adjoint() * v - Mat::Identity(d, d));
  if (defect > completeness_tol) throw std::invalid_argument("neumark_dilate: family is not complete");
  DilationResult r;
  r.isometry = v;
  r.isometry_defect = defect;
  // Householder QR gives a deterministic orthonormal extension of range(V).
  Eigen::HouseholderQR<Mat> qr(v);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  r.unitary.resize(n, n);
  r.unitary.leftCols(d) = v;
  r.unitary.rightCols(n - d) = q.rightCols(n - d);
  r.unitarity_defect = max_abs(r.unitary * r.unitary.adjoint() - Mat::Identity(n, n));
  r.restricted.resize(n);
  for (int i = 0; i < n; ++i) {
    r.restricted[i] = v.row(i).adjoint() * v.row(i);
    Mat target = family.elements[i].weight * family.elements[i].op();
    r.reconstruction_error = std::max(r.reconstruction_error, max_abs(r.restricted[i] - target));
  }
  return r;
}

Mat haar_unitary(int n, std::uint64_t seed) {
  PhiloxStream rng(seed, 0);
  Mat z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      auto [a, b] = rng.normal_pair();
      z(i, j) = cplx(a, b) / std::sqrt(2.0);
    }
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    cplx d = r(j, j);
    q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : cplx(1.0);
  }
  return q;
}

MeasureFamily restricted_basis_povm(int d, int n, std::uint64_t seed) {
  if (d < 2 || n < d) throw std::invalid_argument("restricted_basis_povm: need 2 <= d <= n");
  Mat u = haar_unitary(n, seed);
  // W spans the subspace; Pi_i = W^+ |i><i| W on C^d.
  Mat w = u.leftCols(d);
  MeasureFamily fam;
  fam.domain = finite_dim(d);
  fam.family_kind = FamilyKind::General;
  for (int i = 0; i < n; ++i) {
    MeasureElement e;
    e.label = {static_cast<double>(i)};
    e.weight = 1.0;
    e.factor = w.row(i).adjoint();
    fam.elements.push_back(std::move(e));
  }
  return finalize_family(std::move(fam));
}

MeasureFamily tetrahedron_povm() {
  // Bloch vectors of a regular tetrahedron; elements (1/2)|psi_k><psi_k|.
  const double s = 1.0 / std::sqrt(3.0);
  const double bloch[4][3] = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  MeasureFamily fam;
  fam.domain = finite_dim(2);
  for (int k = 0; k < 4; ++k) {
    double x = bloch[k][0], y = bloch[k][1], z = bloch[k][2];
    double theta = std::acos(z), phi = std::atan2(y, x);
    MeasureElement e;
    e.label = {static_cast<double>(k)};
    e.weight = 0.5;
    e.factor.resize(2, 1);
    e.factor(0, 0) = std::cos(theta / 2);
    e.factor(1, 0) = std::polar(std::sin(theta / 2), phi);
    fam.elements.push_back(std::move(e));
  }
  return finalize_family(std::move(fam));
}

}  // namespace hp
