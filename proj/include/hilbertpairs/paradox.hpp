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

#include <map>
#include <string>
#include <vector>

#include "hilbertpairs/core.hpp"

namespace hp {

struct Verdict {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string rule;
};

struct ParadoxConventions {
  double L = 1.0;
  double mass = 1.0;
  int eigen_index = 0;
  double hbar = 1.0;
};

// One plot-ready table: named columns of equal length.
struct ParadoxTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ParadoxReport {
  std::string name;
  ParadoxConventions conventions;
  // Grid, cutoff and tolerance parameters the quantities depend on.
  std::map<std::string, double> parameters;
  std::map<std::string, double> quantities;
  std::vector<Verdict> verdicts;
  std::vector<ParadoxTable> tables;
  bool all_pass() const;
};

// Expansion of the constant state 1/sqrt(L) in the theta0 extension eigenbasis.
struct ConstantWfParams {
  double theta0 = 3.141592653589793;
  int m_max = 10000;
  double L = 1.0;
  double parseval_tol = 1e-3;
};
ParadoxReport constant_wf_report(const ConstantWfParams& params);
// c_m = i (e^{-i theta0} - 1) / (theta0 + 2 pi m).
cplx constant_wf_coefficient(double theta0, int m);

struct SincMomentParams {
  int n = 2;
  std::vector<double> cutoffs = {50, 100, 200, 400, 800};
  double L = 1.0;
};
// Moments of the box state's squared momentum density, and of the single sinc
// kernel sin(kL)/(kL), over symmetric windows [-K, K].
ParadoxReport sinc_moment_scan(const SincMomentParams& params);
double box_momentum_density(double k, double L);
double squared_density_moment(int n, double cutoff, double L);
double single_sinc_moment(int n, double cutoff, double L);

struct FiniteWellParams {
  std::vector<double> depths = {10, 100, 1000, 10000};
  double L = 1.0;
  int eigen_index = 0;
  // Odd number of cells covering the well; the walls sit midway between nodes.
  int n_inside = 4001;
  // Margin beyond the wall in decay lengths, and its lower bound.
  double margin_decay_lengths = 30.0;
  double margin_min = 0.3;
  double total_tol = 0.05;
  double pattern_tol = 0.10;
};

struct WellDecomposition {
  double depth = 0.0;
  double energy = 0.0;
  double kappa = 0.0;
  double inside = 0.0;
  double outside = 0.0;
  double boundary = 0.0;
  double total = 0.0;
  int grid_points = 0;
};

struct WellState {
  RVec x;
  RVec psi;
  double h = 0.0;
  double energy = 0.0;
};

// Lowest eigenpairs of the finite-difference well Hamiltonian P^2/2 + V.
WellState finite_well_state(double depth, const FiniteWellParams& params);
WellDecomposition finite_well_decomposition(double depth, const FiniteWellParams& params);
// <[X^4, P^4]> computed from the right-acting expansion on the box eigenstate.
double box_commutator_value(double L, int eigen_index);
ParadoxReport finite_well_commutator(const FiniteWellParams& params);

struct EnergyVarianceParams {
  int n_points = 2000;
  double L = 1.0;
  double stability_tol = 0.01;
};

struct EnergyVarianceRoutes {
  // Naive fourth difference of the samples.
  double p4_naive = 0.0;
  double p2_mean = 0.0;
  double p2_sq_norm = 0.0;
  // ||P^2 psi||^2 - <P^2>^2 with the Dirichlet P^2.
  double variance = 0.0;
};

EnergyVarianceRoutes energy_variance_routes(const RVec& psi, double L);
ParadoxReport energy_variance_example(const EnergyVarianceParams& params);

struct ParadoxConfig {
  std::vector<std::string> scenarios;
  ConstantWfParams constant_wf;
  SincMomentParams sinc;
  FiniteWellParams well;
  EnergyVarianceParams variance;
};

const std::vector<std::string>& paradox_scenarios();
ParadoxReport run_scenario(const std::string& name, const ParadoxConfig& config);

}  // namespace hp
