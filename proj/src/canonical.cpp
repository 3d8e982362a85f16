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

#include "hilbertpairs/canonical.hpp"

#include <algorithm>
#include <cmath>

namespace hp {

LinearOperator position_operator(const DomainSpec& domain) {
  RVec x = domain.points();
  Mat m = Mat::Zero(x.size(), x.size());
  m.diagonal() = x.cast<cplx>();
  return make_operator(domain, std::move(m));
}

namespace {

Mat spectral_derivative(int n, double h) {
  // P_{jl} = c((j - l) mod n) with c(d) = (1/n) sum_q k_q e^{2 pi i q d / n}.
  int q_lo = -(n / 2);
  Vec c(n);
  for (int d = 0; d < n; ++d) {
    cplx acc = 0.0;
    for (int q = q_lo; q < q_lo + n; ++q) {
      double k = 2.0 * kPi * q / (n * h);
      acc += k * std::polar(1.0, 2.0 * kPi * q * d / n);
    }
    c[d] = acc / static_cast<double>(n);
  }
  Mat p(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) p(j, l) = c[((j - l) % n + n) % n];
  return p;
}

Mat central_difference(int n, double h) {
  Mat p = Mat::Zero(n, n);
  cplx a = -kI / (2.0 * h);
  for (int j = 0; j < n; ++j) {
    p(j, (j + 1) % n) += a;
    p(j, (j + n - 1) % n) -= a;
  }
  return p;
}

}  // namespace

LinearOperator momentum_line(const DomainSpec& domain, DerivativeScheme scheme) {
  if (domain.kind != DomainKind::RealLine)
    throw std::invalid_argument("momentum_line requires a RealLine domain");
  int n = domain.size();
  double h = domain.spacing();
  Mat p = scheme == DerivativeScheme::Spectral ? spectral_derivative(n, h)
                                               : central_difference(n, h);
  return make_operator(domain, std::move(p));
}

double extension_momentum(const ExtensionParams& ext, double L, int m) {
  return (2.0 * kPi * m + ext.theta0) / L;
}

namespace {

void check_extension(const DomainSpec& domain, const ExtensionParams& ext) {
  if (domain.kind != DomainKind::Interval)
    throw std::invalid_argument("extension family requires an Interval domain");
  if (!(ext.theta0 >= 0.0 && ext.theta0 < 2.0 * kPi))
    throw std::invalid_argument("theta0 must lie in [0, 2pi)");
  if (ext.m_cutoff < 1) throw std::invalid_argument("m_cutoff must be >= 1");
  if (!(2 * ext.m_cutoff < domain.n_points / 2))
    throw std::invalid_argument("m_cutoff too large for grid: need 2*cutoff < n_points/2");
}

}  // namespace

Mat interval_momentum_basis(const DomainSpec& domain, const ExtensionParams& ext) {
  check_extension(domain, ext);
  int n = domain.size();
  int c = ext.m_cutoff;
  double scale = std::sqrt(domain.spacing() / domain.L);
  Mat q(n, 2 * c + 1);
  for (int m = -c; m <= c; ++m) {
    double p = extension_momentum(ext, domain.L, m);
    for (int j = 0; j < n; ++j) q(j, m + c) = scale * std::polar(1.0, p * domain.point(j));
  }
  return q;
}

LinearOperator momentum_interval_extension(const DomainSpec& domain, const ExtensionParams& ext) {
  Mat q = interval_momentum_basis(domain, ext);
  RVec p(q.cols());
  for (int m = -ext.m_cutoff; m <= ext.m_cutoff; ++m)
    p[m + ext.m_cutoff] = extension_momentum(ext, domain.L, m);
  Mat op = q * p.cast<cplx>().asDiagonal() * q.adjoint();
  return make_operator(domain, std::move(op));
}

std::vector<double> trapezoid_weights(const std::vector<double>& samples) {
  if (samples.empty()) throw std::invalid_argument("empty sample list");
  if (!std::is_sorted(samples.begin(), samples.end()))
    throw std::invalid_argument("samples must be sorted");
  size_t n = samples.size();
  std::vector<double> w(n, 0.0);
  if (n == 1) return w;
  for (size_t i = 0; i + 1 < n; ++i) {
    double d = 0.5 * (samples[i + 1] - samples[i]);
    w[i] += d;
    w[i + 1] += d;
  }
  return w;
}

Mat halfline_resolved_basis(const DomainSpec& domain, double k_max) {
  if (domain.kind != DomainKind::HalfLine)
    throw std::invalid_argument("resolved sine basis requires a HalfLine domain");
  double X = domain.x_max;
  int modes = static_cast<int>(std::floor(k_max * X / kPi));
  modes = std::clamp(modes, 1, domain.size() - 1);
  Mat q(domain.size(), modes);
  double scale = std::sqrt(2.0 * domain.spacing() / X);
  for (int k = 1; k <= modes; ++k)
    for (int j = 0; j < domain.size(); ++j)
      q(j, k - 1) = scale * std::sin(k * kPi * domain.point(j) / X);
  return q;
}

MeasureFamily momentum_povm_halfline(const DomainSpec& domain,
                                     const std::vector<double>& p_samples) {
  if (domain.kind != DomainKind::HalfLine && domain.kind != DomainKind::LatticeN)
    throw std::invalid_argument("half-line momentum family needs HalfLine or LatticeN");
  std::vector<double> w = trapezoid_weights(p_samples);
  MeasureFamily fam;
  fam.domain = domain;
  fam.family_kind = FamilyKind::General;
  int n = domain.size();
  // HalfLine: sqrt(h) e^{ipx}/sqrt(2pi); LatticeN: sqrt(L0/2pi) e^{ipnL0}.
  double scale = domain.kind == DomainKind::HalfLine ? std::sqrt(domain.spacing() / (2.0 * kPi))
                                                      : std::sqrt(domain.L0 / (2.0 * kPi));
  fam.elements.reserve(p_samples.size());
  for (size_t i = 0; i < p_samples.size(); ++i) {
    MeasureElement e;
    e.label = {p_samples[i]};
    e.weight = w[i];
    e.factor.resize(n, 1);
    for (int j = 0; j < n; ++j) e.factor(j, 0) = scale * std::polar(1.0, p_samples[i] * domain.point(j));
    fam.elements.push_back(std::move(e));
  }
  if (domain.kind == DomainKind::HalfLine) {
    double p_max = std::max(std::abs(p_samples.front()), std::abs(p_samples.back()));
    fam.resolved = halfline_resolved_basis(domain, 0.5 * p_max);
  }
  return finalize_family(std::move(fam));
}

double default_abel_damping(const DomainSpec& domain) {
  return std::log(1e6) / domain.x_max;
}

cplx halfline_overlap(const DomainSpec& domain, double p, double p_prime, double damping) {
  if (domain.kind != DomainKind::HalfLine)
    throw std::invalid_argument("halfline_overlap requires a HalfLine domain");
  cplx acc = 0.0;
  for (int j = 0; j < domain.size(); ++j) {
    double x = domain.point(j);
    acc += std::exp(-damping * x) * std::polar(1.0, (p - p_prime) * x);
  }
  return acc * domain.spacing() / (2.0 * kPi);
}

double band_product_norm(const MeasureFamily& family, double e0, double e1, double e2) {
  int n = family.dim();
  Mat a = Mat::Zero(n, n), b = Mat::Zero(n, n);
  for (const auto& e : family.elements) {
    double p = e.label.at(0);
    if (p >= e0 && p < e1) a += e.weight * e.op();
    if (p >= e1 && p < e2) b += e.weight * e.op();
  }
  return op_norm(a * b);
}

DualPair dual_pair_lattice(const DomainSpec& domain) {
  if (domain.kind != DomainKind::LatticeZ)
    throw std::invalid_argument("dual_pair_lattice requires a LatticeZ domain");
  int M = domain.size();
  if (M < 2) throw std::invalid_argument("lattice window needs M >= 2");
  RVec p(M);
  int q_lo = -(M / 2);
  for (int k = 0; k < M; ++k) p[k] = 2.0 * kPi * (q_lo + k) / (M * domain.L0);
  Mat f(M, M);
  for (int j = 0; j < M; ++j)
    for (int k = 0; k < M; ++k) f(j, k) = std::polar(1.0 / std::sqrt(M), p[k] * domain.point(j));
  Mat pm = f * p.cast<cplx>().asDiagonal() * f.adjoint();
  return DualPair{position_operator(domain), make_operator(domain, std::move(pm)), p};
}

namespace {

double relative_residual(const Vec& a, const Vec& b) {
  double nb = b.norm();
  return nb > 0 ? (a - b).norm() / nb : (a - b).norm();
}

}  // namespace

WeylCheckReport weyl_check_line(const LinearOperator& X, const LinearOperator& P, double s,
                                double t, const std::vector<StateVector>& states) {
  require_same_domain(X.domain, P.domain, "weyl_check_line");
  const DomainSpec& dom = X.domain;
  Mat esp = exp_i_hermitian(P.matrix, s);
  Vec etx = (kI * t * X.matrix.diagonal()).array().exp().matrix();
  Mat lhs = esp * etx.asDiagonal();
  Mat rhs = std::polar(1.0, t * s) * (etx.asDiagonal() * esp);
  WeylCheckReport r;
  r.s = s;
  r.t = t;
  for (const auto& psi : states) {
    require_same_domain(dom, psi.domain, "weyl_check_line");
    r.max_deviation = std::max(r.max_deviation,
                               relative_residual(lhs * psi.amplitudes, rhs * psi.amplitudes));
  }
  // Rows and columns well inside the box, away from the periodic seam.
  std::vector<int> inner;
  for (int j = 0; j < dom.size(); ++j)
    if (std::abs(dom.point(j)) < 0.5 * dom.x_max) inner.push_back(j);
  for (int j : inner)
    for (int l : inner) r.interior_entrywise = std::max(r.interior_entrywise, std::abs(lhs(j, l) - rhs(j, l)));
  r.naive_deviation = r.max_deviation;
  return r;
}

WeylCheckReport weyl_check_interval(const LinearOperator& X, const LinearOperator& P, double s,
                                    double t, const std::vector<StateVector>& states) {
  require_same_domain(X.domain, P.domain, "weyl_check_interval");
  const DomainSpec& dom = X.domain;
  if (dom.kind != DomainKind::Interval)
    throw std::invalid_argument("weyl_check_interval requires an Interval domain");
  double L = dom.L;
  int n = dom.size();
  Mat esp = exp_i_hermitian(P.matrix, s);
  Vec etx = (kI * t * X.matrix.diagonal()).array().exp().matrix();
  WeylCheckReport r;
  r.s = s;
  r.t = t;
  r.wrap_integers.resize(n);
  Vec corrected(n);
  for (int j = 0; j < n; ++j) {
    double x = dom.point(j);
    long m = static_cast<long>(std::floor((x + s) / L));
    r.wrap_integers[j] = m;
    corrected[j] = std::polar(1.0, t * (s - m * L));
  }
  cplx naive = std::polar(1.0, t * s);
  for (const auto& psi : states) {
    require_same_domain(dom, psi.domain, "weyl_check_interval");
    Vec lhs = esp * (etx.asDiagonal() * psi.amplitudes);
    Vec base = etx.asDiagonal() * (esp * psi.amplitudes);
    Vec rhs_c = corrected.asDiagonal() * base;
    Vec rhs_n = naive * base;
    r.max_deviation = std::max(r.max_deviation, relative_residual(lhs, rhs_c));
    r.naive_deviation = std::max(r.naive_deviation, relative_residual(lhs, rhs_n));
  }
  return r;
}

DiscreteWeyl discrete_weyl(int D, int n0, double phi0) {
  if (D < 2) throw std::invalid_argument("discrete_weyl requires D >= 2");
  DomainSpec dom = finite_dim(D, n0);
  // |phi> = sum_k e^{i k phi}|k>, phi_n = 2 pi n / D + phi0.
  Mat f(D, D);
  RVec phi(D);
  for (int a = 0; a < D; ++a) {
    phi[a] = 2.0 * kPi * (n0 + a) / D + phi0;
    for (int k = 0; k < D; ++k) f(k, a) = std::polar(1.0, (n0 + k) * phi[a]);
  }
  Mat p6 = f * phi.cast<cplx>().asDiagonal() * f.adjoint() / static_cast<double>(D);
  Mat shift = f * (-kI * phi.cast<cplx>()).array().exp().matrix().asDiagonal() * f.adjoint() /
              static_cast<double>(D);
  LinearOperator x6 = position_operator(dom);
  Vec zc = (2.0 * kPi * kI / static_cast<double>(D) * x6.matrix.diagonal()).array().exp().matrix();
  Mat clock = zc.asDiagonal();
  return DiscreteWeyl{x6, make_operator(dom, std::move(p6)), make_operator(dom, std::move(shift)),
                      make_operator(dom, std::move(clock))};
}

namespace {

Mat matrix_power(const Mat& a, int k) {
  Mat r = Mat::Identity(a.rows(), a.cols());
  Mat base = a;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

}  // namespace

double relation_deviation(const DiscreteWeyl& w, int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("relation_deviation expects n, m >= 0");
  int D = w.X6.domain.size();
  Mat xn = matrix_power(w.shift.matrix, n);
  Mat zm = matrix_power(w.clock.matrix, m);
  cplx phase = std::polar(1.0, -2.0 * kPi * static_cast<double>(m) * n / D);
  return op_norm(xn * zm - phase * zm * xn);
}

namespace {

double midpoint_norm(double a, double b, double rate, int cells) {
  double h = (b - a) / cells;
  double acc = 0.0;
  for (int j = 0; j < cells; ++j) acc += std::exp(2.0 * rate * (a + (j + 0.5) * h));
  return acc * h;
}

// Relative growth of the truncated norm of e^{rate x} when the window doubles.
double tail_fraction(DomainKind kind, double x_max, double L, double rate) {
  auto norm_at = [&](double X) {
    switch (kind) {
      case DomainKind::RealLine: return midpoint_norm(-X, X, rate, 20000);
      case DomainKind::HalfLine: return midpoint_norm(0.0, X, rate, 20000);
      default: return midpoint_norm(0.0, L, rate, 20000);
    }
  };
  double n1 = norm_at(x_max), n2 = norm_at(2.0 * x_max);
  return (n2 - n1) / n2;
}

}  // namespace

DeficiencyReport deficiency_evidence(DomainKind kind, double x_max, double L, double tail_tol) {
  if (kind != DomainKind::RealLine && kind != DomainKind::HalfLine && kind != DomainKind::Interval)
    throw std::invalid_argument("deficiency_evidence covers RealLine, HalfLine, Interval");
  DeficiencyReport r;
  // n_plus counts e^{-x} (solution at +i), n_minus counts e^{+x}.
  r.tail_plus = tail_fraction(kind, x_max, L, -1.0);
  r.tail_minus = tail_fraction(kind, x_max, L, 1.0);
  r.n_plus = r.tail_plus < tail_tol ? 1 : 0;
  r.n_minus = r.tail_minus < tail_tol ? 1 : 0;
  if (r.n_plus != r.n_minus)
    r.verdict = "no self-adjoint extension";
  else if (r.n_plus == 0)
    r.verdict = "essentially self-adjoint";
  else
    r.verdict = "family of extensions exists";
  return r;
}

long interleave_index(long n) {
  if (n < 0) throw std::invalid_argument("interleave_index expects n >= 0");
  return n % 2 == 0 ? n / 2 : -(n + 1) / 2;
}

long interleave_inverse(long m) {
  return m >= 0 ? 2 * m : -2 * m - 1;
}

}  // namespace hp
