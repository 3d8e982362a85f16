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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hp {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

constexpr double kPi = 3.14159265358979323846;
constexpr cplx kI{0.0, 1.0};

enum class DomainKind { RealLine, HalfLine, Interval, LatticeZ, LatticeN, FiniteDim };

std::string to_string(DomainKind kind);
DomainKind domain_kind_from_string(const std::string& name);

// Only the fields relevant to a kind are read; the rest keep their defaults.
struct DomainParams {
  double L = 1.0;
  double L0 = 1.0;
  double lambda0 = 0.0;
  double x_max = 1.0;
  int n_points = 0;
  int D = 0;
  int n0 = 0;
  // LatticeZ: first index of the truncated window. Defaults to -(n_points/2).
  long m_min = 0;
  bool m_min_set = false;
  int fock_dim = 0;
};

struct DomainSpec {
  DomainKind kind = DomainKind::FiniteDim;
  double L = 1.0;
  double L0 = 1.0;
  double lambda0 = 0.0;
  double x_max = 1.0;
  int n_points = 0;
  int D = 0;
  int n0 = 0;
  long m_min = 0;
  int fock_dim = 0;

  bool is_grid() const {
    return kind == DomainKind::RealLine || kind == DomainKind::HalfLine ||
           kind == DomainKind::Interval;
  }
  int size() const;
  // Grid spacing h for continuous kinds, 1 for discrete bases.
  double spacing() const;
  // Quadrature weight of each basis point.
  double weight() const { return is_grid() ? spacing() : 1.0; }
  double point(int j) const;
  RVec points() const;
  bool operator==(const DomainSpec& other) const = default;
};

DomainSpec make_domain(DomainKind kind, const DomainParams& params);

DomainSpec real_line(double x_max, int n_points);
DomainSpec half_line(double x_max, int n_points);
DomainSpec interval(double L, int n_points);
DomainSpec lattice_z(double L0, double lambda0, int n_points);
DomainSpec lattice_z(double L0, double lambda0, int n_points, long m_min);
DomainSpec lattice_n(double L0, int n_points);
DomainSpec finite_dim(int D, int n0 = 0);
DomainSpec fock_space(int fock_dim);

struct StateVector {
  Vec amplitudes;
  DomainSpec domain;

  double weight() const { return domain.weight(); }
  double norm() const;
  bool is_normalized(double tol = 1e-10) const;
  StateVector normalized() const;
};

StateVector make_state(const DomainSpec& domain, Vec amplitudes);

struct OperatorMeta {
  double hermitian_tol = 0.0;
  double unitary_tol = 0.0;
};

struct LinearOperator {
  Mat matrix;
  DomainSpec domain;
  OperatorMeta meta;

  StateVector apply(const StateVector& psi) const;
};

// Measures hermitian_tol and unitary_tol from the matrix.
LinearOperator make_operator(const DomainSpec& domain, Mat matrix);
OperatorMeta measure_meta(const Mat& m);

cplx inner_product(const StateVector& f, const StateVector& g);

// <psi|M|psi>. Rejects unnormalized input unless allow_unnormalized is set.
cplx expectation(const LinearOperator& op, const StateVector& psi,
                 bool allow_unnormalized = false, double norm_tol = 1e-10);

void require_same_domain(const DomainSpec& a, const DomainSpec& b, const char* what);

// Dense helpers shared across modules.
Mat exp_i_hermitian(const Mat& h, double s);
double op_norm(const Mat& m);
double max_abs(const Mat& m);

}  // namespace hp
