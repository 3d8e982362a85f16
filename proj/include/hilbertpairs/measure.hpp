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

#include <cstdint>
#include <vector>

#include "hilbertpairs/core.hpp"

namespace hp {

// A weighted positive element stored as op = factor * factor^dagger in the
// orthonormal coordinates of the domain basis (amplitudes scaled by sqrt(weight)).
struct MeasureElement {
  std::vector<double> label;
  double weight = 1.0;
  Mat factor;
  // Smallest eigenvalue of the operator this element was built from; zero for
  // elements constructed in factored form.
  double min_eigenvalue = 0.0;

  Mat op() const { return factor * factor.adjoint(); }
};

enum class FamilyKind { Projective, General };

struct MeasureFamily {
  DomainSpec domain;
  std::vector<MeasureElement> elements;
  FamilyKind family_kind = FamilyKind::General;
  // Orthonormal columns of the subspace on which completeness is measured.
  // Empty means the whole truncated space.
  Mat resolved;
  double completeness_deviation = 0.0;

  int dim() const { return domain.size(); }
  Mat total() const;
};

// ||Q^dagger (sum_i w_i Pi_i - 1) Q|| in operator norm.
double completeness_deviation(const MeasureFamily& family);
MeasureFamily finalize_family(MeasureFamily family);

// Builds an element from a full positive operator; the eigenvalue floor is recorded.
MeasureElement element_from_operator(const Mat& op, double weight, std::vector<double> label);

struct FamilyValidation {
  bool complete = false;
  bool projective = false;
  double completeness_deviation = 0.0;
  double max_pair_product = 0.0;
  double max_idempotency_defect = 0.0;
  double min_eigenvalue = 0.0;
  std::vector<double> purities;
};

FamilyValidation validate_family(const MeasureFamily& family, double tol = 1e-8);

double purity(const LinearOperator& element);
double purity(const Mat& element);
double purity(const MeasureElement& element);

struct KrausElement {
  LinearOperator op;
  std::vector<double> label;
};

KrausElement gaussian_position_kraus(double x0, double w, const DomainSpec& domain,
                                     double dx0 = 1.0);

// Complete Gaussian Kraus set over a uniform x0 grid with spacing dx0.
std::vector<KrausElement> gaussian_position_kraus_set(const std::vector<double>& x0_grid,
                                                      double w, const DomainSpec& domain);

MeasureFamily kraus_family(const std::vector<KrausElement>& kraus);

struct PostState {
  StateVector state;
  double probability = 0.0;
};

struct PostDensity {
  Mat rho;
  double probability = 0.0;
};

PostState apply_kraus(const KrausElement& k, const StateVector& psi);
// rho in orthonormal coordinates of the domain basis, trace one.
PostDensity apply_kraus(const KrausElement& k, const Mat& rho);

MeasureFamily coarse_position_family(const DomainSpec& domain, double L0, double lambda0);

// Elements w_p |p,m><p,m| with p spanning the grid band [-pi/h, pi/h) at
// samples_per_period points per 2 pi / L0.
MeasureFamily binned_phase_space_family(const DomainSpec& domain, double L0, double lambda0,
                                        int samples_per_period);

struct DilationResult {
  Mat isometry;
  Mat unitary;
  // Computational-basis projectors on the enlarged space are |i><i|; their
  // restrictions V^dagger |i><i| V reproduce the input family.
  std::vector<Mat> restricted;
  double isometry_defect = 0.0;
  double unitarity_defect = 0.0;
  double reconstruction_error = 0.0;
};

DilationResult neumark_dilate(const MeasureFamily& family, double rank_tol = 1e-8,
                              double completeness_tol = 1e-8);

// Restriction of the computational-basis PVM of C^n to a random d-dimensional
// subspace; a complete rank-1 n-outcome POVM on C^d.
MeasureFamily restricted_basis_povm(int d, int n, std::uint64_t seed);
MeasureFamily tetrahedron_povm();
Mat haar_unitary(int n, std::uint64_t seed);

}  // namespace hp
