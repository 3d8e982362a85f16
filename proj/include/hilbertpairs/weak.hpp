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
#include <functional>
#include <vector>

#include "hilbertpairs/core.hpp"
#include "hilbertpairs/measure.hpp"

namespace hp {

struct FockQuadratures {
  LinearOperator X;
  LinearOperator P;
};

// X = (a + a^+)/sqrt2 and P = (a - a^+)/(i sqrt2) on the truncated Fock space.
FockQuadratures fock_quadratures(int fock_dim);

// K = exp(X dW_X + P dW_P - (X^2 + P^2) dt), by dense hermitian exponentiation.
KrausElement kraus_increment(double dt, double dW_X, double dW_P, const LinearOperator& X,
                             const LinearOperator& P);

// Applies the same K to the columns of m in place, using that the exponent is a
// diagonal phase conjugation of a real symmetric tridiagonal matrix. Exact up to
// rounding; the Taylor series of the tridiagonal factor is summed to machine precision.
class FockKrausStepper {
 public:
  explicit FockKrausStepper(int fock_dim);
  void apply(double dt, double dW_X, double dW_P, Mat& m) const;
  int dim() const { return d_; }

 private:
  int d_;
  RVec g_;
  RVec off_;
};

struct TrajectoryParams {
  double T = 10.0;
  double dt = 1e-3;
  std::uint64_t seed = 1;
  std::uint64_t index = 0;
  int fock_dim = 30;
  // Series stride in steps; 1 records every step.
  int record_every = 1;
  // When positive, draw increments under the outcome measure of the input
  // rho0 = P_B / B (P_B the projector on n < B) instead of the Wiener measure:
  // dW gains the drift 2 <X> dt, 2 <P> dt with respect to rho ~ A P_B A^+.
  int physical_block = 0;
};

struct TrajectorySample {
  double t = 0.0;
  double dW_X = 0.0;
  double dW_P = 0.0;
  double purity = 0.0;
  double mean_x = 0.0;
  double mean_p = 0.0;
};

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  double dt = 0.0;
  long steps = 0;
  std::vector<TrajectorySample> series;
  // Accumulated element A^+ A normalized to unit trace.
  Mat final_element;
  // Unnormalized accumulated element, used for completeness statistics.
  Mat unnormalized_element;
  StateVector final_state;
  double max_mean_number = 0.0;
  bool valid = true;
};

TrajectoryRecord run_trajectory(const StateVector& psi0, const TrajectoryParams& params);

// True when the series is non-decreasing (within tol) from some point in its first half on.
bool eventually_monotone(const std::vector<TrajectorySample>& series, double tol = 1e-12);

struct EnsembleSummary {
  int trajectories = 0;
  int invalid = 0;
  double median_final_purity = 0.0;
  double monotone_fraction = 0.0;
  // Operator norm of the mean unnormalized element minus identity on n < block.
  double unbiased_deviation = 0.0;
  int block = 8;
  Mat mean_unnormalized;
  std::vector<double> final_purities;
  // Ensemble median of log(1 - purity) per recorded time.
  std::vector<double> times;
  std::vector<double> median_log_impurity;
};

// Trajectory i uses stream index base.index + i; visit sees every record in order.
EnsembleSummary run_ensemble(const StateVector& psi0, const TrajectoryParams& base, int count,
                             int block = 8,
                             const std::function<void(int, const TrajectoryRecord&)>& visit = {});

struct LieClosureReport {
  int block = 0;
  // Residual and real coefficients for each ordered pair (i < j).
  struct Entry {
    int i = 0;
    int j = 0;
    double residual = 0.0;
    std::vector<double> coefficients;
  };
  std::vector<Entry> entries;
  double max_residual = 0.0;
};

// Basis order: 1, i1, X, P, iX, iP, X^2 + P^2.
struct PhysicalEstimate {
  int trajectories = 0;
  int invalid = 0;
  int block = 8;
  // Mean of B Pi / Tr(P_B Pi) over records drawn with physical_block = B; estimates
  // the Wiener mean of Pi on the block with entries bounded by B per trajectory.
  Mat mean_element;
  double deviation = 0.0;
};

PhysicalEstimate physical_completeness_estimate(const TrajectoryParams& base, int count, int block = 8);

struct CoherentFit {
  cplx alpha = 0.0;
  double overlap = 0.0;
};

// Largest |<alpha|v>|^2 over alpha for the top eigenvector v of a positive element;
// coarse grid search then local refinement.
CoherentFit coherent_fit(const Mat& element, double radius = 5.0);

LieClosureReport lie_closure_check(const LinearOperator& X, const LinearOperator& P, int fock_dim,
                                   int block);

}  // namespace hp
