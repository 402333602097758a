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

#include "noisesim/choi.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace noisesim {

namespace {

constexpr double kChoiEigenvalue = -1e-9;
constexpr double kChoiTrace = 1e-10;
constexpr double kChoiMarginal = 1e-9;
constexpr double kAbsoluteSlack = 1e-13;

// (K (x) I)|Omega> has components K(a, b) / sqrt(d) at index a * d + b.
Vector lifted_omega(const Matrix& k) {
  const std::size_t d = std::size_t(k.rows());
  Vector v(d * d);
  const double scale = 1.0 / std::sqrt(double(d));
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) v(a * d + b) = k(a, b) * scale;
  }
  return v;
}

Vector lifted_omega(const PauliString& p) { return lifted_omega(to_matrix(p)); }

bool leq(double lhs, double rhs) { return lhs <= rhs * (1.0 + kBoundSlack) + kAbsoluteSlack; }

Eigen::VectorXd clipped_spectrum(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::max(ev(i), 0.0);
  return ev;
}

}  // namespace

Vector maximally_entangled(std::size_t d) {
  if (d == 0) throw DimensionError("maximally_entangled: d must be positive");
  Vector v = Vector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(double(d));
  for (std::size_t i = 0; i < d; ++i) v(i * d + i) = amp;
  return v;
}

ChoiState::ChoiState(std::size_t d, Matrix matrix) : d_(d), matrix_(std::move(matrix)) {
  if (std::size_t(matrix_.rows()) != d * d || std::size_t(matrix_.cols()) != d * d) {
    throw DimensionError("Choi matrix must be d^2 x d^2");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kChoiTrace) {
    throw InvariantError("Choi state trace " + std::to_string(tr.real()) + " != 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (matrix_ + matrix_.adjoint()),
                                           Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kChoiEigenvalue) {
    throw InvariantError("Choi state not positive semidefinite (min eigenvalue " +
                         std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
  const Matrix marginal = partial_trace_first(matrix_, d, d);
  const double dev = (marginal - Matrix::Identity(d, d) / double(d)).cwiseAbs().maxCoeff();
  if (dev > kChoiMarginal) {
    throw InvariantError("Choi state reference marginal differs from I/d by " + std::to_string(dev) +
                         " (channel not trace preserving)");
  }
}

ChoiState choi_of(const PauliChannel& channel) {
  const std::size_t d = std::size_t{1} << channel.n_qubits();
  Matrix j = Matrix::Zero(d * d, d * d);
  for (const auto& t : channel.terms()) {
    if (t.weight == 0.0) continue;
    const Vector v = lifted_omega(t.pauli);
    j += t.weight * (v * v.adjoint());
  }
  return ChoiState(d, std::move(j));
}

ChoiState choi_of(const KrausChannel& channel) {
  const std::size_t d = channel.dim();
  Matrix j = Matrix::Zero(d * d, d * d);
  for (const auto& k : channel.operators()) {
    const Vector v = lifted_omega(k);
    j += v * v.adjoint();
  }
  return ChoiState(d, std::move(j));
}

Matrix partial_trace_first(const Matrix& m, std::size_t d1, std::size_t d2) {
  if (std::size_t(m.rows()) != d1 * d2 || m.rows() != m.cols()) {
    throw DimensionError("partial_trace_first: shape mismatch");
  }
  Matrix out = Matrix::Zero(d2, d2);
  for (std::size_t a = 0; a < d1; ++a) out += m.block(a * d2, a * d2, d2, d2);
  return out;
}

Matrix partial_trace_second(const Matrix& m, std::size_t d1, std::size_t d2) {
  if (std::size_t(m.rows()) != d1 * d2 || m.rows() != m.cols()) {
    throw DimensionError("partial_trace_second: shape mismatch");
  }
  Matrix out(d1, d1);
  for (std::size_t a = 0; a < d1; ++a) {
    for (std::size_t c = 0; c < d1; ++c) out(a, c) = m.block(a * d2, c * d2, d2, d2).trace();
  }
  return out;
}

Matrix sandwich(const Matrix& j, const Matrix& rho) {
  const std::size_t d = std::size_t(rho.rows());
  if (std::size_t(j.rows()) != d * d || j.rows() != j.cols()) {
    throw DimensionError("sandwich: Choi matrix and state dimensions disagree");
  }
  const Matrix rho_t = rho.transpose();
  Matrix out(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a) {
    out.middleRows(a * d, d) = rho_t * j.middleRows(a * d, d);
  }
  return out;
}

DensityMatrix apply_via_choi(const ChoiState& j, const DensityMatrix& rho) {
  if (rho.dim() != j.dim()) throw DimensionError("apply_via_choi: dimension mismatch");
  const std::size_t d = j.dim();
  Matrix out = double(d) * partial_trace_second(sandwich(j.matrix(), rho.matrix()), d, d);
  return DensityMatrix(std::move(out), Validation::kNone);
}

double schatten_norm(const Matrix& m, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("Schatten order must be >= 1");
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  if (std::isinf(p)) return s.maxCoeff();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i), p);
  return std::pow(acc, 1.0 / p);
}

double schatten_distance(const Matrix& a, const Matrix& b, double p) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("schatten_distance: shape mismatch");
  }
  return schatten_norm(a - b, p);
}

double renyi_entropy(const DensityMatrix& rho, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("Renyi order must be >= 1");
  const Eigen::VectorXd ev = clipped_spectrum(rho.matrix());
  double s = 0.0;
  if (p == 1.0) {
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (ev(i) > 0.0) s -= ev(i) * std::log(ev(i));
    }
  } else if (std::isinf(p)) {
    s = -std::log(ev.maxCoeff());
  } else {
    double tr = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) tr += std::pow(ev(i), p);
    s = std::log(tr) / (1.0 - p);
  }
  return std::max(s, 0.0);
}

BoundReport choi_bound_check(const PauliChannel& sys, const PauliChannel& eff,
                             const DensityMatrix& rho, double p) {
  if (sys.n_qubits() != eff.n_qubits() || rho.dim() != (std::size_t{1} << sys.n_qubits())) {
    throw DimensionError("choi_bound_check: channels and state must share a dimension");
  }
  if (!(p >= 1.0)) throw std::invalid_argument("Schatten order must be >= 1");
  BoundReport r;
  r.p = p;
  r.d = rho.dim();
  const double d = double(r.d);

  const Matrix out_sys = apply_pauli_channel(sys, rho).matrix();
  const Matrix out_eff = apply_pauli_channel(eff, rho).matrix();
  const ChoiState j_sys = choi_of(sys);
  const ChoiState j_eff = choi_of(eff);
  const Matrix delta_j = j_sys.matrix() - j_eff.matrix();

  r.duality_error = std::max(
      (apply_via_choi(j_sys, rho).matrix() - out_sys).cwiseAbs().maxCoeff(),
      (apply_via_choi(j_eff, rho).matrix() - out_eff).cwiseAbs().maxCoeff());

  r.lhs = schatten_distance(out_sys, out_eff, p);
  r.choi_dist = schatten_norm(delta_j, p);
  r.sandwich_mid = schatten_norm(sandwich(delta_j, rho.matrix()), p);
  r.renyi = renyi_entropy(rho, p);

  r.final_rhs = d * d * r.choi_dist;
  r.holds_final = leq(r.lhs, r.final_rhs);

  if (std::isinf(p)) {
    r.upper_applicable = false;
    r.holds_upper = true;
    r.lower_lhs = r.lhs / (d * d);
  } else {
    // e^{(1-p) S_p} is defined as 1 at p = 1.
    const double entropy_factor = p == 1.0 ? 1.0 : std::exp((1.0 - p) * r.renyi);
    r.entropy_rhs = std::pow(d * entropy_factor, 1.0 / p) * r.choi_dist;
    r.plain_rhs = std::pow(d, 1.0 / p) * r.choi_dist;
    r.holds_upper = leq(r.sandwich_mid, r.entropy_rhs) && leq(r.entropy_rhs, r.plain_rhs);
    r.lower_lhs = r.lhs / std::pow(d, (2.0 * p - 1.0) / p);
  }
  r.holds_lower = leq(r.lower_lhs, r.sandwich_mid);
  return r;
}

}  // namespace noisesim
