// Copyright 2026 The noisesim Authors
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

#include <cstddef>
#include <limits>

#include "noisesim/channels.hpp"
#include "noisesim/types.hpp"

namespace noisesim {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// |Omega> = (1/sqrt d) sum_i |i>|i>, channel side first.
Vector maximally_entangled(std::size_t d);

/// J(E) = (E (x) id)(|Omega><Omega|). Factor 1 is the channel side, factor 2
/// the reference side; a d^2 x d^2 matrix indexed (a * d + b).
class ChoiState {
 public:
  /// Checks PSD, unit trace and Tr_1 J = I/d; throws InvariantError.
  ChoiState(std::size_t d, Matrix matrix);

  std::size_t dim() const noexcept { return d_; }
  const Matrix& matrix() const noexcept { return matrix_; }

 private:
  std::size_t d_;
  Matrix matrix_;
};

ChoiState choi_of(const PauliChannel& channel);
ChoiState choi_of(const KrausChannel& channel);

/// Partial traces of a (d1*d2) x (d1*d2) operator, named by the traced factor.
Matrix partial_trace_first(const Matrix& m, std::size_t d1, std::size_t d2);
Matrix partial_trace_second(const Matrix& m, std::size_t d1, std::size_t d2);

/// (I (x) rho^T) J, the operator whose partial trace gives E(rho)/d.
Matrix sandwich(const Matrix& j, const Matrix& rho);

/// d Tr_2[(I (x) rho^T) J].
DensityMatrix apply_via_choi(const ChoiState& j, const DensityMatrix& rho);

/// Schatten p-norm from singular values; p = kInfinity gives the spectral norm.
double schatten_norm(const Matrix& m, double p);
double schatten_distance(const Matrix& a, const Matrix& b, double p);

/// S_p(rho) = ln Tr[rho^p] / (1 - p). p = 1 is the von Neumann limit and
/// p = kInfinity the min-entropy. Eigenvalues below zero are clipped.
double renyi_entropy(const DensityMatrix& rho, double p);

struct BoundReport {
  double p = 2.0;
  std::size_t d = 0;
  double lhs = 0.0;           // ||E_sys(rho) - E_eff(rho)||_p
  double choi_dist = 0.0;     // ||J_sys - J_eff||_p
  double sandwich_mid = 0.0;  // ||(I (x) rho^T)(J_sys - J_eff)||_p
  double renyi = 0.0;         // S_p(rho)
  double final_rhs = 0.0;     // d^2 ||dJ||_p
  double entropy_rhs = 0.0;   // (d e^{(1-p)S_p})^{1/p} ||dJ||_p
  double plain_rhs = 0.0;     // d^{1/p} ||dJ||_p
  double lower_lhs = 0.0;     // ||dE||_p / d^{(2p-1)/p}
  double duality_error = 0.0; // max over both channels of |d Tr_2[...] - E(rho)|
  bool holds_final = false;     // (i)
  bool holds_upper = false;     // (ii); trivially true for p = infinity
  bool upper_applicable = true;
  bool holds_lower = false;     // (iii)

  bool all_hold() const { return holds_final && holds_upper && holds_lower; }
};

/// Relative slack used when comparing the two sides of each inequality.
inline constexpr double kBoundSlack = 1e-9;

/// Evaluates the Choi-distance bound chain for a pair of channels and a
/// state. The inequalities are compared in p-th-root form.
BoundReport choi_bound_check(const PauliChannel& sys, const PauliChannel& eff,
                             const DensityMatrix& rho, double p);

}  // namespace noisesim
