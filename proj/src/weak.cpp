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

#include "hilbertpairs/weak.hpp"

#include <algorithm>
#include <cmath>

#include "hilbertpairs/coherent.hpp"
#include "hilbertpairs/philox.hpp"

namespace hp {

namespace {

using RRow = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Mat lowering(int d) {
  Mat a = Mat::Zero(d, d);
  for (int k = 0; k + 1 < d; ++k) a(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
  return a;
}

}  // namespace

FockQuadratures fock_quadratures(int fock_dim) {
  if (fock_dim < 2) throw std::invalid_argument("fock_quadratures: fock_dim must be >= 2");
  DomainSpec dom = fock_space(fock_dim);
  Mat a = lowering(fock_dim);
  Mat x = (a + a.adjoint()) / std::sqrt(2.0);
  Mat p = (a - a.adjoint()) / (kI * std::sqrt(2.0));
  return FockQuadratures{make_operator(dom, std::move(x)), make_operator(dom, std::move(p))};
}

KrausElement kraus_increment(double dt, double dW_X, double dW_P, const LinearOperator& X,
                             const LinearOperator& P) {
  if (!(dt > 0)) throw std::invalid_argument("kraus_increment: dt must be positive");
  require_same_domain(X.domain, P.domain, "kraus_increment");
  Mat e = dW_X * X.matrix + dW_P * P.matrix - dt * (X.matrix * X.matrix + P.matrix * P.matrix);
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (e + e.adjoint()));
  Vec ex = es.eigenvalues().array().exp().matrix().cast<cplx>();
  Mat k = es.eigenvectors() * ex.asDiagonal() * es.eigenvectors().adjoint();
  return KrausElement{make_operator(X.domain, std::move(k)), {dW_X, dW_P}};
}

FockKrausStepper::FockKrausStepper(int fock_dim) : d_(fock_dim) {
  FockQuadratures q = fock_quadratures(fock_dim);
  Mat g = q.X.matrix * q.X.matrix + q.P.matrix * q.P.matrix;
  g_ = g.diagonal().real();
  off_.resize(d_ - 1);
  for (int k = 0; k + 1 < d_; ++k) off_[k] = std::sqrt(static_cast<double>(k + 1));
}

namespace {

// One Taylor term: out = (T in) / j, x += out. Returns ||out||^2.
double taylor_term(const double* dg, const double* off, int d, int w, double inv, const double* in,
                   double* out, double* x) {
  double t2 = 0.0;
  for (int k = 0; k < d; ++k) {
    const double* r0 = in + static_cast<long>(k) * w;
    const double* rm = k > 0 ? r0 - w : r0;
    const double* rp = k + 1 < d ? r0 + w : r0;
    double c0 = dg[k] * inv;
    double cm = k > 0 ? off[k - 1] * inv : 0.0;
    double cp = k + 1 < d ? off[k] * inv : 0.0;
    double* o = out + static_cast<long>(k) * w;
    double* xr = x + static_cast<long>(k) * w;
    for (int i = 0; i < w; ++i) {
      double v = c0 * r0[i] + cm * rm[i] + cp * rp[i];
      o[i] = v;
      xr[i] += v;
      t2 += v * v;
    }
  }
  return t2;
}

// Rows k of (re + i im) multiplied by e^{i k phi}.
void phase_rows(RRow& m, int half, double phi) {
  double c1 = std::cos(phi), s1 = std::sin(phi);
  double c = 1.0, s = 0.0;
  for (int k = 0; k < m.rows(); ++k) {
    double* re = m.data() + k * m.cols();
    double* im = re + half;
    if (k > 0)
      for (int i = 0; i < half; ++i) {
        double a = re[i], b = im[i];
        re[i] = c * a - s * b;
        im[i] = s * a + c * b;
      }
    double cn = c * c1 - s * s1;
    s = s * c1 + c * s1;
    c = cn;
  }
}

class SplitStepper {
 public:
  SplitStepper(const RVec& g, const RVec& off)
      : g_(g), off_(off), dg_(g.size()), sc_(off.size()) {}

  // m holds [Re | Im] of a d x half complex block, row-major.
  void apply(double dt, double dW_X, double dW_P, RRow& m) {
    int d = static_cast<int>(m.rows());
    int w = static_cast<int>(m.cols());
    int half = w / 2;
    // X dW_X + P dW_P = zeta a^+ + conj(zeta) a, zeta = (dW_X + i dW_P)/sqrt2,
    // so the exponent is U T U^+ with U = diag(e^{i k arg zeta}) and T real.
    double zr = dW_X / std::sqrt(2.0), zi = dW_P / std::sqrt(2.0);
    double r = std::hypot(zr, zi);
    double phi = std::atan2(zi, zr);
    double norm1 = 0.0;
    for (int k = 0; k < d; ++k) {
      double row = std::abs(dt * g_[k]) + (k > 0 ? r * off_[k - 1] : 0.0) +
                   (k + 1 < d ? r * off_[k] : 0.0);
      norm1 = std::max(norm1, row);
    }
    int sub = std::max(1, static_cast<int>(std::ceil(norm1 / 0.5)));
    for (int k = 0; k < d; ++k) dg_[k] = -dt * g_[k] / sub;
    for (int k = 0; k + 1 < d; ++k) sc_[k] = r * off_[k] / sub;
    if (term_.rows() != d || term_.cols() != w) {
      term_.resize(d, w);
      next_.resize(d, w);
    }
    phase_rows(m, half, -phi);
    for (int s = 0; s < sub; ++s) {
      term_ = m;
      double m2 = m.squaredNorm();
      for (int j = 1; j <= 40; ++j) {
        double t2 = taylor_term(dg_.data(), sc_.data(), d, w, 1.0 / j, term_.data(), next_.data(),
                                m.data());
        term_.swap(next_);
        if (t2 <= 1e-34 * m2) break;
      }
    }
    phase_rows(m, half, phi);
  }

 private:
  const RVec& g_;
  const RVec& off_;
  RVec dg_;
  RVec sc_;
  RRow term_;
  RRow next_;
};

RRow split(const Mat& m) {
  RRow out(m.rows(), 2 * m.cols());
  out.leftCols(m.cols()) = m.real();
  out.rightCols(m.cols()) = m.imag();
  return out;
}

Mat merge(const RRow& s, int cols, int offset = 0, int half = -1) {
  if (half < 0) half = static_cast<int>(s.cols() / 2);
  Mat out(s.rows(), cols);
  out.real() = s.middleCols(offset, cols);
  out.imag() = s.middleCols(half + offset, cols);
  return out;
}

}  // namespace

void FockKrausStepper::apply(double dt, double dW_X, double dW_P, Mat& m) const {
  if (m.rows() != d_) throw std::invalid_argument("FockKrausStepper: row count mismatch");
  RRow s = split(m);
  SplitStepper stepper(g_, off_);
  stepper.apply(dt, dW_X, dW_P, s);
  m = merge(s, static_cast<int>(m.cols()));
}

TrajectoryRecord run_trajectory(const StateVector& psi0, const TrajectoryParams& prm) {
  int d = prm.fock_dim;
  if (psi0.domain.kind != DomainKind::FiniteDim || psi0.domain.size() != d)
    throw std::invalid_argument("run_trajectory: psi0 must live on the Fock space of fock_dim");
  if (!psi0.is_normalized()) throw std::invalid_argument("run_trajectory: psi0 not normalized");
  if (!(prm.dt > 0) || !(prm.T > 0)) throw std::invalid_argument("run_trajectory: dt and T must be positive");
  long steps = std::lround(prm.T / prm.dt);
  if (steps < 1) throw std::invalid_argument("run_trajectory: T shorter than one step");
  int stride = std::max(1, prm.record_every);
  const int pb = prm.physical_block;
  if (pb < 0 || pb > d) throw std::invalid_argument("run_trajectory: physical_block out of range");

  RVec g(d), off(d - 1);
  {
    FockQuadratures q = fock_quadratures(d);
    g = (q.X.matrix * q.X.matrix + q.P.matrix * q.P.matrix).diagonal().real();
    for (int k = 0; k + 1 < d; ++k) off[k] = std::sqrt(static_cast<double>(k + 1));
  }
  SplitStepper step(g, off);

  // Columns 0..d-1 accumulate A; column d carries the state.
  Mat init(d, d + 1);
  init.leftCols(d) = Mat::Identity(d, d);
  init.col(d) = psi0.amplitudes;
  RRow m = split(init);
  const int half = d + 1;
  double log_scale = 0.0;

  TrajectoryRecord rec;
  rec.seed = prm.seed;
  rec.index = prm.index;
  rec.dt = prm.dt;
  rec.steps = steps;
  rec.series.reserve(steps / stride + 1);
  PhiloxStream rng(prm.seed, prm.index);
  const double sdt = std::sqrt(prm.dt);

  for (long s = 0; s < steps; ++s) {
    auto [z1, z2] = rng.normal_pair();
    double dwx = sdt * z1, dwp = sdt * z2;
    if (pb > 0) {
      // Tr(X A P_B A^+) and Tr(P A P_B A^+) column by column.
      double ax = 0.0, ap = 0.0, tr = 0.0;
      for (int c = 0; c < pb; ++c) {
        for (int k = 0; k < d; ++k) tr += m(k, c) * m(k, c) + m(k, half + c) * m(k, half + c);
        for (int k = 0; k + 1 < d; ++k) {
          double r0 = m(k, c), i0 = m(k, half + c), r1 = m(k + 1, c), i1 = m(k + 1, half + c);
          ax += off[k] * (r0 * r1 + i0 * i1);
          ap += off[k] * (r0 * i1 - i0 * r1);
        }
      }
      dwx += 2.0 * std::sqrt(2.0) * ax / tr * prm.dt;
      dwp += 2.0 * std::sqrt(2.0) * ap / tr * prm.dt;
    }
    step.apply(prm.dt, dwx, dwp, m);

    double a_norm = std::sqrt(m.leftCols(d).squaredNorm() + m.middleCols(half, d).squaredNorm());
    m.leftCols(d) /= a_norm;
    m.middleCols(half, d) /= a_norm;
    log_scale += std::log(a_norm);

    double psi_norm = std::sqrt(m.col(d).squaredNorm() + m.col(half + d).squaredNorm());
    if (psi_norm < 1e-14) throw std::domain_error("run_trajectory: state norm collapsed");
    m.col(d) /= psi_norm;
    m.col(half + d) /= psi_norm;

    double mean_n = 0.0;
    for (int k = 0; k < d; ++k)
      mean_n += k * (m(k, d) * m(k, d) + m(k, half + d) * m(k, half + d));
    rec.max_mean_number = std::max(rec.max_mean_number, mean_n);

    if ((s + 1) % stride == 0 || s + 1 == steps) {
      Mat a = merge(m, d, 0, half);
      Mat pi = a.adjoint() * a;
      double tr = pi.trace().real();
      TrajectorySample smp;
      smp.t = (s + 1) * prm.dt;
      smp.dW_X = dwx;
      smp.dW_P = dwp;
      smp.purity = pi.squaredNorm() / (tr * tr);
      Vec psi = merge(m, 1, d, half).col(0);
      cplx am = 0.0;
      for (int k = 0; k + 1 < d; ++k) am += std::conj(psi[k]) * off[k] * psi[k + 1];
      smp.mean_x = std::sqrt(2.0) * am.real();
      smp.mean_p = std::sqrt(2.0) * am.imag();
      rec.series.push_back(smp);
    }
  }
  Mat a = merge(m, d, 0, half);
  Mat pi = a.adjoint() * a;
  rec.final_element = pi / pi.trace().real();
  rec.unnormalized_element = std::exp(2.0 * log_scale) * pi;
  rec.final_state = StateVector{merge(m, 1, d, half).col(0), psi0.domain};
  rec.valid = rec.max_mean_number < d / 2.0;
  return rec;
}

bool eventually_monotone(const std::vector<TrajectorySample>& series, double tol) {
  if (series.size() < 2) return true;
  size_t k = series.size() - 1;
  while (k > 0 && series[k].purity >= series[k - 1].purity - tol) --k;
  return k <= series.size() / 2;
}

EnsembleSummary run_ensemble(const StateVector& psi0, const TrajectoryParams& base, int count,
                             int block, const std::function<void(int, const TrajectoryRecord&)>& visit) {
  if (count < 1) throw std::invalid_argument("run_ensemble: count must be >= 1");
  if (block < 1 || block > base.fock_dim) throw std::invalid_argument("run_ensemble: block out of range");
  EnsembleSummary sum;
  sum.trajectories = count;
  sum.block = block;
  int d = base.fock_dim;
  sum.mean_unnormalized = Mat::Zero(d, d);
  int valid = 0, monotone = 0;
  std::vector<std::vector<double>> log_imp;
  for (int i = 0; i < count; ++i) {
    TrajectoryParams p = base;
    p.index = base.index + static_cast<std::uint64_t>(i);
    TrajectoryRecord rec = run_trajectory(psi0, p);
    if (visit) visit(i, rec);
    if (!rec.valid) {
      ++sum.invalid;
      continue;
    }
    ++valid;
    sum.mean_unnormalized += rec.unnormalized_element;
    sum.final_purities.push_back(rec.series.back().purity);
    if (eventually_monotone(rec.series)) ++monotone;
    if (sum.times.empty())
      for (const auto& s : rec.series) sum.times.push_back(s.t);
    std::vector<double> li;
    for (const auto& s : rec.series) li.push_back(std::log(std::max(1.0 - s.purity, 1e-300)));
    log_imp.push_back(std::move(li));
  }
  if (valid == 0) return sum;
  sum.mean_unnormalized /= static_cast<double>(valid);
  Mat blk = sum.mean_unnormalized.topLeftCorner(block, block);
  sum.unbiased_deviation = op_norm(blk - Mat::Identity(block, block));
  std::vector<double> fp = sum.final_purities;
  std::sort(fp.begin(), fp.end());
  sum.median_final_purity = fp.size() % 2 ? fp[fp.size() / 2]
                                          : 0.5 * (fp[fp.size() / 2 - 1] + fp[fp.size() / 2]);
  sum.monotone_fraction = static_cast<double>(monotone) / valid;
  for (size_t t = 0; t < sum.times.size(); ++t) {
    std::vector<double> col;
    for (const auto& li : log_imp) col.push_back(li[t]);
    std::sort(col.begin(), col.end());
    sum.median_log_impurity.push_back(col.size() % 2 ? col[col.size() / 2]
                                                     : 0.5 * (col[col.size() / 2 - 1] + col[col.size() / 2]));
  }
  return sum;
}

PhysicalEstimate physical_completeness_estimate(const TrajectoryParams& base, int count, int block) {
  if (count < 1) throw std::invalid_argument("physical_completeness_estimate: count must be >= 1");
  int d = base.fock_dim;
  if (block < 1 || block > d) throw std::invalid_argument("physical_completeness_estimate: block out of range");
  PhysicalEstimate est;
  est.trajectories = count;
  est.block = block;
  est.mean_element = Mat::Zero(d, d);
  Vec v0 = Vec::Zero(d);
  v0[0] = 1.0;
  StateVector psi0{v0, fock_space(d)};
  int valid = 0;
  for (int i = 0; i < count; ++i) {
    TrajectoryParams p = base;
    p.index = base.index + static_cast<std::uint64_t>(i);
    p.physical_block = block;
    TrajectoryRecord rec = run_trajectory(psi0, p);
    // The guard concerns the vacuum column; the estimate keeps every record so
    // that excluding large outcomes does not bias the block.
    if (!rec.valid) ++est.invalid;
    ++valid;
    double w = rec.final_element.topLeftCorner(block, block).trace().real();
    est.mean_element += static_cast<double>(block) / w * rec.final_element;
  }
  if (valid == 0) return est;
  est.mean_element /= static_cast<double>(valid);
  est.deviation = op_norm(est.mean_element.topLeftCorner(block, block) - Mat::Identity(block, block));
  return est;
}

CoherentFit coherent_fit(const Mat& element, double radius) {
  int d = static_cast<int>(element.rows());
  if (d < 2 || element.cols() != d) throw std::invalid_argument("coherent_fit: element must be square");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (element + element.adjoint()));
  Vec v = es.eigenvectors().col(d - 1);
  auto score = [&](cplx a) { return std::norm(coherent_amplitudes(a, d).dot(v)); };
  CoherentFit best;
  const double h = 0.1;
  int k = static_cast<int>(std::ceil(radius / h));
  for (int i = -k; i <= k; ++i)
    for (int j = -k; j <= k; ++j) {
      cplx a(i * h, j * h);
      double s = score(a);
      if (s > best.overlap) best = {a, s};
    }
  for (double step = h / 2; step > 1e-6; step /= 2) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (cplx dir : {cplx(step, 0), cplx(-step, 0), cplx(0, step), cplx(0, -step)}) {
        double s = score(best.alpha + dir);
        if (s > best.overlap) {
          best = {best.alpha + dir, s};
          moved = true;
        }
      }
    }
  }
  return best;
}

LieClosureReport lie_closure_check(const LinearOperator& X, const LinearOperator& P, int fock_dim,
                                   int block) {
  require_same_domain(X.domain, P.domain, "lie_closure_check");
  if (X.domain.size() != fock_dim) throw std::invalid_argument("lie_closure_check: fock_dim mismatch");
  if (block < 1 || block + 4 > fock_dim)
    throw std::invalid_argument("lie_closure_check: block too large for fock_dim");
  int d = fock_dim;
  Mat id = Mat::Identity(d, d);
  std::vector<Mat> basis = {id, kI * id, X.matrix, P.matrix, kI * X.matrix, kI * P.matrix,
                            X.matrix * X.matrix + P.matrix * P.matrix};
  int nb = static_cast<int>(basis.size());
  int b2 = block * block;
  RMat design(2 * b2, nb);
  for (int k = 0; k < nb; ++k) {
    RMat re = basis[k].topLeftCorner(block, block).real();
    RMat im = basis[k].topLeftCorner(block, block).imag();
    design.col(k).head(b2) = Eigen::Map<RVec>(re.data(), b2);
    design.col(k).tail(b2) = Eigen::Map<RVec>(im.data(), b2);
  }
  Eigen::ColPivHouseholderQR<RMat> qr(design);
  LieClosureReport rep;
  rep.block = block;
  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j) {
      Mat c = (basis[i] * basis[j] - basis[j] * basis[i]).topLeftCorner(block, block);
      RVec rhs(2 * b2);
      RMat re = c.real(), im = c.imag();
      rhs.head(b2) = Eigen::Map<RVec>(re.data(), b2);
      rhs.tail(b2) = Eigen::Map<RVec>(im.data(), b2);
      RVec coef = qr.solve(rhs);
      LieClosureReport::Entry e;
      e.i = i;
      e.j = j;
      e.residual = (design * coef - rhs).norm();
      e.coefficients.assign(coef.data(), coef.data() + coef.size());
      rep.max_residual = std::max(rep.max_residual, e.residual);
      rep.entries.push_back(std::move(e));
    }
  return rep;
}

}  // namespace hp
