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

#include "hilbertpairs/core.hpp"

#include <cmath>

namespace hp {

std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::RealLine: return "RealLine";
    case DomainKind::HalfLine: return "HalfLine";
    case DomainKind::Interval: return "Interval";
    case DomainKind::LatticeZ: return "LatticeZ";
    case DomainKind::LatticeN: return "LatticeN";
    case DomainKind::FiniteDim: return "FiniteDim";
  }
  return "FiniteDim";
}

DomainKind domain_kind_from_string(const std::string& name) {
  for (auto k : {DomainKind::RealLine, DomainKind::HalfLine, DomainKind::Interval,
                 DomainKind::LatticeZ, DomainKind::LatticeN, DomainKind::FiniteDim}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown domain kind: " + name);
}

int DomainSpec::size() const {
  return kind == DomainKind::FiniteDim ? D : n_points;
}

double DomainSpec::spacing() const {
  switch (kind) {
    case DomainKind::RealLine: return 2.0 * x_max / n_points;
    case DomainKind::HalfLine: return x_max / n_points;
    case DomainKind::Interval: return L / n_points;
    case DomainKind::LatticeZ:
    case DomainKind::LatticeN: return L0;
    case DomainKind::FiniteDim: return 1.0;
  }
  return 1.0;
}

double DomainSpec::point(int j) const {
  switch (kind) {
    case DomainKind::RealLine: return -x_max + j * spacing();
    case DomainKind::HalfLine:
    case DomainKind::Interval: return (j + 0.5) * spacing();
    case DomainKind::LatticeZ: return static_cast<double>(m_min + j) * L0 + lambda0;
    case DomainKind::LatticeN: return j * L0;
    case DomainKind::FiniteDim: return n0 + j;
  }
  return 0.0;
}

RVec DomainSpec::points() const {
  RVec x(size());
  for (int j = 0; j < size(); ++j) x[j] = point(j);
  return x;
}

DomainSpec make_domain(DomainKind kind, const DomainParams& p) {
  DomainSpec d;
  d.kind = kind;
  d.fock_dim = p.fock_dim;
  auto need_points = [&] {
    if (p.n_points < 4) throw std::invalid_argument("n_points must be >= 4");
    d.n_points = p.n_points;
  };
  switch (kind) {
    case DomainKind::RealLine:
    case DomainKind::HalfLine:
      if (!(p.x_max > 0)) throw std::invalid_argument("x_max must be positive");
      need_points();
      d.x_max = p.x_max;
      break;
    case DomainKind::Interval:
      if (!(p.L > 0)) throw std::invalid_argument("L must be positive");
      need_points();
      d.L = p.L;
      break;
    case DomainKind::LatticeZ:
      if (!(p.L0 > 0)) throw std::invalid_argument("L0 must be positive");
      if (!(p.lambda0 >= 0 && p.lambda0 < p.L0))
        throw std::invalid_argument("lambda0 must lie in [0, L0)");
      if (p.n_points < 2) throw std::invalid_argument("lattice window needs >= 2 sites");
      d.L0 = p.L0;
      d.lambda0 = p.lambda0;
      d.n_points = p.n_points;
      d.m_min = p.m_min_set ? p.m_min : -(p.n_points / 2);
      break;
    case DomainKind::LatticeN:
      if (!(p.L0 > 0)) throw std::invalid_argument("L0 must be positive");
      if (p.n_points < 2) throw std::invalid_argument("lattice window needs >= 2 sites");
      d.L0 = p.L0;
      d.n_points = p.n_points;
      break;
    case DomainKind::FiniteDim:
      if (p.D < 2) throw std::invalid_argument("D must be >= 2");
      d.D = p.D;
      d.n0 = p.n0;
      break;
  }
  return d;
}

DomainSpec real_line(double x_max, int n_points) {
  DomainParams p;
  p.x_max = x_max;
  p.n_points = n_points;
  return make_domain(DomainKind::RealLine, p);
}

DomainSpec half_line(double x_max, int n_points) {
  DomainParams p;
  p.x_max = x_max;
  p.n_points = n_points;
  return make_domain(DomainKind::HalfLine, p);
}

DomainSpec interval(double L, int n_points) {
  DomainParams p;
  p.L = L;
  p.n_points = n_points;
  return make_domain(DomainKind::Interval, p);
}

DomainSpec lattice_z(double L0, double lambda0, int n_points) {
  DomainParams p;
  p.L0 = L0;
  p.lambda0 = lambda0;
  p.n_points = n_points;
  return make_domain(DomainKind::LatticeZ, p);
}

DomainSpec lattice_z(double L0, double lambda0, int n_points, long m_min) {
  DomainParams p;
  p.L0 = L0;
  p.lambda0 = lambda0;
  p.n_points = n_points;
  p.m_min = m_min;
  p.m_min_set = true;
  return make_domain(DomainKind::LatticeZ, p);
}

DomainSpec lattice_n(double L0, int n_points) {
  DomainParams p;
  p.L0 = L0;
  p.n_points = n_points;
  return make_domain(DomainKind::LatticeN, p);
}

DomainSpec finite_dim(int D, int n0) {
  DomainParams p;
  p.D = D;
  p.n0 = n0;
  return make_domain(DomainKind::FiniteDim, p);
}

DomainSpec fock_space(int fock_dim) {
  DomainParams p;
  p.D = fock_dim;
  p.fock_dim = fock_dim;
  return make_domain(DomainKind::FiniteDim, p);
}

void require_same_domain(const DomainSpec& a, const DomainSpec& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": domain mismatch");
}

double StateVector::norm() const {
  return std::sqrt(weight() * amplitudes.squaredNorm());
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(weight() * amplitudes.squaredNorm() - 1.0) < tol;
}

StateVector StateVector::normalized() const {
  double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  return StateVector{amplitudes / n, domain};
}

StateVector make_state(const DomainSpec& domain, Vec amplitudes) {
  if (amplitudes.size() != domain.size())
    throw std::invalid_argument("amplitude count does not match domain size");
  return StateVector{std::move(amplitudes), domain};
}

OperatorMeta measure_meta(const Mat& m) {
  OperatorMeta meta;
  meta.hermitian_tol = max_abs(m - m.adjoint());
  meta.unitary_tol = max_abs(m * m.adjoint() - Mat::Identity(m.rows(), m.cols()));
  return meta;
}

LinearOperator make_operator(const DomainSpec& domain, Mat matrix) {
  if (matrix.rows() != domain.size() || matrix.cols() != domain.size())
    throw std::invalid_argument("operator dimension does not match domain size");
  OperatorMeta meta = measure_meta(matrix);
  return LinearOperator{std::move(matrix), domain, meta};
}

StateVector LinearOperator::apply(const StateVector& psi) const {
  require_same_domain(domain, psi.domain, "apply");
  return StateVector{matrix * psi.amplitudes, domain};
}

cplx inner_product(const StateVector& f, const StateVector& g) {
  require_same_domain(f.domain, g.domain, "inner_product");
  return f.weight() * f.amplitudes.dot(g.amplitudes);
}

cplx expectation(const LinearOperator& op, const StateVector& psi, bool allow_unnormalized,
                 double norm_tol) {
  require_same_domain(op.domain, psi.domain, "expectation");
  if (!allow_unnormalized && !psi.is_normalized(norm_tol))
    throw std::invalid_argument("expectation: state is not normalized");
  return psi.weight() * psi.amplitudes.dot(op.matrix * psi.amplitudes);
}

Mat exp_i_hermitian(const Mat& h, double s) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec phase = (kI * s * es.eigenvalues().cast<cplx>()).array().exp().matrix();
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

double op_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace hp
