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

#pragma once

#include <string>
#include <vector>

#include "hilbertpairs/core.hpp"
#include "hilbertpairs/measure.hpp"

namespace hp {

enum class DerivativeScheme { Spectral, CentralDifference };

LinearOperator position_operator(const DomainSpec& domain);

// Periodic derivative on the truncated box. Spectral is the default; the
// second-order central difference is kept for convergence-rate studies.
LinearOperator momentum_line(const DomainSpec& domain,
                             DerivativeScheme scheme = DerivativeScheme::Spectral);

struct ExtensionParams {
  double theta0 = 0.0;
  int m_cutoff = 8;
};

double extension_momentum(const ExtensionParams& ext, double L, int m);

// Columns sqrt(h) e^{i p_m x_j} / sqrt(L), m = -cutoff..cutoff.
Mat interval_momentum_basis(const DomainSpec& domain, const ExtensionParams& ext);

LinearOperator momentum_interval_extension(const DomainSpec& domain, const ExtensionParams& ext);

std::vector<double> trapezoid_weights(const std::vector<double>& samples);

// Orthonormal box sine modes with wavenumber <= k_max on a HalfLine grid.
Mat halfline_resolved_basis(const DomainSpec& domain, double k_max);

MeasureFamily momentum_povm_halfline(const DomainSpec& domain,
                                     const std::vector<double>& p_samples);

// <p'|p> on the half line with an Abel factor e^{-damping x}.
cplx halfline_overlap(const DomainSpec& domain, double p, double p_prime, double damping);
double default_abel_damping(const DomainSpec& domain);

// ||mu_E mu_E'|| for E = [e0, e1), E' = [e1, e2).
double band_product_norm(const MeasureFamily& family, double e0, double e1, double e2);

struct DualPair {
  LinearOperator X;
  LinearOperator P;
  RVec momenta;
};

DualPair dual_pair_lattice(const DomainSpec& domain);

struct WeylCheckReport {
  double s = 0.0;
  double t = 0.0;
  double max_deviation = 0.0;
  // Deviation with the uncorrected phase e^{its} (Interval only).
  double naive_deviation = 0.0;
  // Entrywise matrix deviation over interior rows and columns (RealLine only).
  double interior_entrywise = 0.0;
  std::vector<long> wrap_integers;
};

WeylCheckReport weyl_check_line(const LinearOperator& X, const LinearOperator& P, double s,
                                double t, const std::vector<StateVector>& states);
WeylCheckReport weyl_check_interval(const LinearOperator& X, const LinearOperator& P, double s,
                                    double t, const std::vector<StateVector>& states);

struct DiscreteWeyl {
  LinearOperator X6;
  LinearOperator P6;
  LinearOperator shift;
  LinearOperator clock;
};

DiscreteWeyl discrete_weyl(int D, int n0 = 0, double phi0 = 0.0);
double relation_deviation(const DiscreteWeyl& w, int n, int m);

struct DeficiencyReport {
  int n_plus = 0;
  int n_minus = 0;
  double tail_plus = 0.0;
  double tail_minus = 0.0;
  std::string verdict;
};

DeficiencyReport deficiency_evidence(DomainKind kind, double x_max = 20.0, double L = 1.0,
                                     double tail_tol = 1e-6);

long interleave_index(long n);
long interleave_inverse(long m);

}  // namespace hp
