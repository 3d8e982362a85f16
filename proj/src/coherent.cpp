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

#include "hilbertpairs/coherent.hpp"

#include <algorithm>
#include <cmath>

#include "hilbertpairs/canonical.hpp"

namespace hp {

RMat hermite_functions(const RVec& x, double ell, int count, double x0) {
  RMat h(x.size(), count);
  double norm0 = std::pow(kPi, -0.25) / std::sqrt(ell);
  for (int j = 0; j < x.size(); ++j) {
    double xi = (x[j] - x0) / ell;
    double prev = 0.0;
    double cur = norm0 * std::exp(-0.5 * xi * xi);
    h(j, 0) = cur;
    for (int n = 0; n + 1 < count; ++n) {
      double next = std::sqrt(2.0 / (n + 1)) * xi * cur - std::sqrt(static_cast<double>(n) / (n + 1)) * prev;
      prev = cur;
      cur = next;
      h(j, n + 1) = cur;
    }
  }
  return h;
}

OscillatorBasis oscillator_from_quadratic(double a, double b, int fock_dim, const DomainSpec& grid) {
  if (!(a > 0) || !(b > 0)) throw std::invalid_argument("oscillator: a and b must be positive");
  if (grid.kind != DomainKind::RealLine)
    throw std::invalid_argument("oscillator: grid must be a RealLine domain");
  if (fock_dim < 1) throw std::invalid_argument("oscillator: fock_dim must be >= 1");
  OscillatorBasis o;
  o.a = a;
  o.b = b;
  o.m_eff = 1.0 / std::sqrt(2.0 * b);
  o.omega_eff = 2.0 * std::sqrt(a * b);
  o.ell = std::pow(b / a, 0.25);
  o.fock_dim = fock_dim;
  o.grid = grid;
  o.eigenvalues.resize(fock_dim);
  for (int n = 0; n < fock_dim; ++n) o.eigenvalues[n] = 2.0 * (n + 0.5) * std::sqrt(a * b);

  LinearOperator x = position_operator(grid);
  LinearOperator p = momentum_line(grid);
  // The spectral P^2 kernel is real; diagonalize the real symmetric form.
  RMat p2 = (p.matrix * p.matrix).real();
  RMat h = b * p2;
  RVec xs = grid.points();
  h.diagonal() += a * xs.cwiseAbs2();
  Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (h + h.transpose()));
  int keep = std::min<int>(fock_dim, grid.size());
  o.grid_eigenvalues = es.eigenvalues().head(keep);
  Vec psi0 = es.eigenvectors().col(0).cast<cplx>();
  Vec r = std::sqrt(a) * (x.matrix * psi0) + kI * std::sqrt(b) * (p.matrix * psi0);
  o.annihilation_residual = r.norm() / psi0.norm();
  o.grid_states = hermite_functions(xs, o.ell, fock_dim);
  return o;
}

Vec coherent_amplitudes(cplx alpha, int count) {
  Vec c(count);
  cplx cur = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < count; ++n) {
    c[n] = cur;
    cur *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return c;
}

CoherentState coherent_state(cplx alpha, int fock_dim) {
  if (fock_dim < 2) throw std::invalid_argument("coherent_state: fock_dim must be >= 2");
  CoherentState cs;
  cs.state = StateVector{coherent_amplitudes(alpha, fock_dim), fock_space(fock_dim)};
  cs.norm_deficiency = 1.0 - cs.state.amplitudes.squaredNorm();
  cs.truncation_warning = std::norm(alpha) > fock_dim / 4.0;
  return cs;
}

StateVector fock_to_grid(const OscillatorBasis& basis, const Vec& fock_amplitudes) {
  if (fock_amplitudes.size() > basis.grid_states.cols())
    throw std::invalid_argument("fock_to_grid: more amplitudes than basis states");
  Vec amp = basis.grid_states.leftCols(fock_amplitudes.size()).cast<cplx>() * fock_amplitudes;
  return StateVector{amp, basis.grid};
}

CoherentPovmCheck coherent_povm_check(int fock_dim, double radius, double grid_step, int block) {
  if (!(radius > 0) || !(grid_step > 0))
    throw std::invalid_argument("coherent_povm: radius and step must be positive");
  if (block < 1 || block > fock_dim) throw std::invalid_argument("coherent_povm: block out of range");
  int kmax = static_cast<int>(std::floor(radius / grid_step));
  Mat s = Mat::Zero(block, block);
  CoherentPovmCheck out;
  for (int i = -kmax; i <= kmax; ++i)
    for (int j = -kmax; j <= kmax; ++j) {
      cplx alpha(i * grid_step, j * grid_step);
      if (std::abs(alpha) > radius) continue;
      Vec c = coherent_amplitudes(alpha, block);
      s.noalias() += c * c.adjoint();
      ++out.nodes;
    }
  s *= grid_step * grid_step / kPi;
  out.vacuum = s(0, 0).real();
  out.deviation = op_norm(s - Mat::Identity(block, block));
  return out;
}

double coherent_povm_deviation(int fock_dim, double radius, double grid_step, int block) {
  return coherent_povm_check(fock_dim, radius, grid_step, block).deviation;
}

ProjectedPovmResult projected_interval_povm(const ProjectedPovmParams& prm) {
  DomainSpec dom = interval(prm.L, prm.n_points);
  ExtensionParams ext{0.0, prm.m_cutoff};
  Mat q = interval_momentum_basis(dom, ext);
  if (!(prm.radius > 0) || !(prm.step > 0))
    throw std::invalid_argument("projected_interval_povm: radius and step must be positive");
  ProjectedPovmResult res;
  double p_top = (2.0 * kPi * prm.m_cutoff + kPi) / prm.L;
  res.ell = prm.ell > 0 ? prm.ell : std::sqrt(0.5 * prm.L / p_top);
  res.fock_dim = prm.fock_dim > 0 ? prm.fock_dim
                                  : static_cast<int>(std::ceil(2.0 * prm.radius * prm.radius)) + 60;
  RMat herm = hermite_functions(dom.points(), res.ell, res.fock_dim, 0.5 * prm.L);
  // <p_m | phi_n> restricted to the interval.
  Mat b = std::sqrt(dom.spacing()) * (q.adjoint() * herm.cast<cplx>());

  MeasureFamily fam;
  fam.domain = dom;
  fam.family_kind = FamilyKind::General;
  fam.resolved = q;
  double w = prm.step * prm.step / kPi;
  int kmax = static_cast<int>(std::floor(prm.radius / prm.step));
  int modes = static_cast<int>(q.cols());
  Mat s = Mat::Zero(modes, modes);
  for (int i = -kmax; i <= kmax; ++i)
    for (int j = -kmax; j <= kmax; ++j) {
      cplx alpha(i * prm.step, j * prm.step);
      if (std::abs(alpha) > prm.radius) continue;
      Vec c = b * coherent_amplitudes(alpha, res.fock_dim);
      s.noalias() += w * c * c.adjoint();
      MeasureElement e;
      e.label = {alpha.real(), alpha.imag()};
      e.weight = w;
      e.factor = q * c;
      fam.elements.push_back(std::move(e));
    }
  res.completeness = s;
  res.operator_deviation = op_norm(s - Mat::Identity(modes, modes));
  for (int m = 0; m < modes; ++m)
    res.mode_deficit = std::max(res.mode_deficit, std::abs(1.0 - s(m, m).real()));
  fam.completeness_deviation = res.operator_deviation;
  res.family = std::move(fam);
  return res;
}

namespace {

double poisson_block_tail(double r2, int block) {
  // e^{-r2} sum_{k<block} r2^k / k!, the largest Fock-block weight of |alpha| = sqrt(r2).
  double term = std::exp(-r2), acc = 0.0;
  for (int k = 0; k < block; ++k) {
    acc += term;
    term *= r2 / (k + 1);
  }
  return acc;
}

}  // namespace

FrameReport lattice_frame(double a_lat, double b_lat, int extent, int fock_dim, int block,
                          const std::vector<std::pair<int, int>>& removed) {
  if (!(a_lat > 0) || !(b_lat > 0)) throw std::invalid_argument("lattice_frame: spacings must be positive");
  if (extent < 1) throw std::invalid_argument("lattice_frame: extent must be >= 1");
  if (block <= 0) block = fock_dim / 3;
  if (block < 1 || block > fock_dim) throw std::invalid_argument("lattice_frame: block out of range");
  FrameReport r;
  r.a_lat = a_lat;
  r.b_lat = b_lat;
  r.N = 2.0 * kPi / (a_lat * b_lat);
  r.extent = extent;
  r.block = block;
  double edge = (extent + 1) * std::min(a_lat, b_lat);
  r.coverage_tail = poisson_block_tail(edge * edge, block);
  if (r.coverage_tail > 1e-6) throw std::invalid_argument("lattice_frame: lattice does not cover the block");
  Mat s = Mat::Zero(block, block);
  for (int m = -extent; m <= extent; ++m)
    for (int n = -extent; n <= extent; ++n) {
      if (std::find(removed.begin(), removed.end(), std::make_pair(m, n)) != removed.end()) continue;
      Vec c = coherent_amplitudes(cplx(m * a_lat, n * b_lat), block);
      s.noalias() += c * c.adjoint();
    }
  s *= a_lat * b_lat;
  Eigen::SelfAdjointEigenSolver<Mat> es(s, Eigen::EigenvaluesOnly);
  r.A = es.eigenvalues().minCoeff();
  r.B = es.eigenvalues().maxCoeff();
  r.ratio = r.B / r.A;
  return r;
}

FrameReport lattice_frame_density(double N, int extent, int fock_dim, int block) {
  if (!(N > 0)) throw std::invalid_argument("lattice_frame: N must be positive");
  double a = std::sqrt(2.0 * kPi / N);
  return lattice_frame(a, a, extent, fock_dim, block);
}

}  // namespace hp
