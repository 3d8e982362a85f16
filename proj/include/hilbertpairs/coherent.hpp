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

#include <utility>
#include <vector>

#include "hilbertpairs/core.hpp"
#include "hilbertpairs/measure.hpp"

namespace hp {

struct OscillatorBasis {
  double a = 0.5;
  double b = 0.5;
  double m_eff = 1.0;
  double omega_eff = 1.0;
  // Ground-state length (b/a)^{1/4}.
  double ell = 1.0;
  int fock_dim = 0;
  RVec eigenvalues;
  // Lowest eigenvalues of the grid matrix aX^2 + bP^2.
  RVec grid_eigenvalues;
  double annihilation_residual = 0.0;
  DomainSpec grid;
  // Hermite functions sampled on the grid, one column per Fock level (amplitudes).
  RMat grid_states;
};

OscillatorBasis oscillator_from_quadratic(double a, double b, int fock_dim, const DomainSpec& grid);

// Hermite functions of length ell centered at x0, evaluated at x.
RMat hermite_functions(const RVec& x, double ell, int count, double x0 = 0.0);

struct CoherentState {
  StateVector state;
  double norm_deficiency = 0.0;
  bool truncation_warning = false;
};

CoherentState coherent_state(cplx alpha, int fock_dim);
// Amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!) for n < count.
Vec coherent_amplitudes(cplx alpha, int count);
// Position representation through an oscillator basis.
StateVector fock_to_grid(const OscillatorBasis& basis, const Vec& fock_amplitudes);

struct CoherentPovmCheck {
  double deviation = 0.0;
  double vacuum = 0.0;
  int nodes = 0;
};

CoherentPovmCheck coherent_povm_check(int fock_dim, double radius, double grid_step, int block);
double coherent_povm_deviation(int fock_dim, double radius, double grid_step, int block = 10);

struct ProjectedPovmParams {
  double L = 1.0;
  int m_cutoff = 8;
  int n_points = 512;
  double radius = 6.0;
  double step = 0.25;
  // Zero selects the defaults documented in projected_interval_povm.
  int fock_dim = 0;
  double ell = 0.0;
};

struct ProjectedPovmResult {
  MeasureFamily family;
  // Sum of weighted elements expressed in the |p_m> basis.
  Mat completeness;
  double operator_deviation = 0.0;
  double mode_deficit = 0.0;
  double ell = 0.0;
  int fock_dim = 0;
};

// Pi_alpha = 1_3 |alpha><alpha| 1_3 / pi with 1_3 the span of |p_m>, |m| <= cutoff,
// theta0 = 0; the oscillator is centered at L/2. Defaults: ell balances the
// interval half-width against the top momentum, fock_dim = 2 radius^2 + 60.
ProjectedPovmResult projected_interval_povm(const ProjectedPovmParams& params);

struct FrameReport {
  double a_lat = 0.0;
  double b_lat = 0.0;
  double N = 0.0;
  int extent = 0;
  int block = 0;
  double A = 0.0;
  double B = 0.0;
  double ratio = 0.0;
  double coverage_tail = 0.0;
};

// Frame bounds of (a_lat b_lat) sum |alpha_mn><alpha_mn| on the Fock block n < block
// (default fock_dim / 3), optionally with some lattice points removed.
FrameReport lattice_frame(double a_lat, double b_lat, int extent, int fock_dim, int block = 0,
                          const std::vector<std::pair<int, int>>& removed = {});
FrameReport lattice_frame_density(double N, int extent, int fock_dim, int block = 0);

}  // namespace hp
