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

#include "noisesim/channels.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

namespace noisesim {

namespace {

void require_square_pow2(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || !is_power_of_two(std::size_t(m.rows()))) {
    throw DimensionError(std::string(what) + ": expected a square power-of-two matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Matrix entries, Validation check) : entries_(std::move(entries)) {
  require_square_pow2(entries_, "DensityMatrix");
  validate(check);
}

DensityMatrix DensityMatrix::basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis index out of range");
  Matrix m = Matrix::Zero(dim, dim);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m), Validation::kNone);
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw InvariantError("pure state from a zero vector");
  const Vector v = psi / norm;
  return DensityMatrix(v * v.adjoint(), Validation::kStructural);
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(Matrix::Identity(dim, dim) / double(dim), Validation::kNone);
}

void DensityMatrix::validate(Validation check) const {
  if (check == Validation::kNone) return;
  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tolerance::kHermitian) {
    throw InvariantError("density matrix not Hermitian (max deviation " + std::to_string(herm) + ")");
  }
  const Complex tr = entries_.trace();
  if (std::abs(tr - 1.0) > tolerance::kTrace) {
    throw InvariantError("density matrix trace " + std::to_string(tr.real()) + " != 1");
  }
  if (check == Validation::kFull) {
    const double lo = min_eigenvalue();
    if (lo < tolerance::kEigenvalue) {
      throw InvariantError("density matrix has negative eigenvalue " + std::to_string(lo));
    }
  }
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(entries_), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// PauliChannel

PauliChannel::PauliChannel(std::size_t n_qubits, std::vector<PauliTerm> terms) : n_(n_qubits) {
  if (n_qubits == 0) throw DimensionError("PauliChannel needs at least one qubit");
  std::map<PauliString, double> merged;
  double total = 0.0;
  for (auto& t : terms) {
    if (t.pauli.n_qubits() != n_qubits) {
      throw DimensionError("PauliChannel term '" + render(t.pauli) + "' is not on " +
                           std::to_string(n_qubits) + " qubits");
    }
    if (!(t.weight >= 0.0) || !std::isfinite(t.weight)) {
      throw InvariantError("PauliChannel weight for '" + render(t.pauli) +
                           "' is negative or not finite: " + std::to_string(t.weight));
    }
    merged[t.pauli] += t.weight;
    total += t.weight;
  }
  if (std::abs(total - 1.0) > tolerance::kWeightSum) {
    throw InvariantError("PauliChannel weights sum to " + std::to_string(total) + ", expected 1");
  }
  terms_.reserve(merged.size());
  for (auto& [p, w] : merged) terms_.push_back({w, p});
}

PauliChannel PauliChannel::identity(std::size_t n_qubits) {
  return PauliChannel(n_qubits, {{1.0, PauliString::identity(n_qubits)}});
}

PauliChannel PauliChannel::from_text(const std::vector<std::pair<double, std::string>>& terms) {
  if (terms.empty()) throw InvariantError("PauliChannel needs at least one term");
  std::vector<PauliTerm> parsed;
  parsed.reserve(terms.size());
  for (const auto& [w, s] : terms) parsed.push_back({w, parse_pauli(s)});
  const std::size_t n = parsed.front().pauli.n_qubits();
  return PauliChannel(n, std::move(parsed));
}

double PauliChannel::weight_of(const PauliString& p) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), p,
                             [](const PauliTerm& t, const PauliString& s) { return t.pauli < s; });
  return (it != terms_.end() && it->pauli == p) ? it->weight : 0.0;
}

// ---------------------------------------------------------------------------
// KrausChannel / LindbladSpec

KrausChannel::KrausChannel(std::vector<Matrix> operators) : ops_(std::move(operators)) {
  if (ops_.empty()) throw DimensionError("KrausChannel needs at least one operator");
  require_square_pow2(ops_.front(), "KrausChannel");
  dim_ = std::size_t(ops_.front().rows());
  for (const auto& k : ops_) {
    if (std::size_t(k.rows()) != dim_ || std::size_t(k.cols()) != dim_) {
      throw DimensionError("KrausChannel operators have mismatched shapes");
    }
  }
}

double KrausChannel::completeness_defect() const {
  Matrix sum = Matrix::Zero(dim_, dim_);
  for (const auto& k : ops_) sum += k.adjoint() * k;
  return (sum - Matrix::Identity(dim_, dim_)).norm();
}

void LindbladSpec::validate() const {
  if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() == 0) {
    throw DimensionError("Hamiltonian must be square and nonempty");
  }
  const double herm = (hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tolerance::kHermitian) {
    throw InvariantError("Hamiltonian not Hermitian (max deviation " + std::to_string(herm) + ")");
  }
  for (const auto& g : jump_operators) {
    if (g.rows() != hamiltonian.rows() || g.cols() != hamiltonian.cols()) {
      throw DimensionError("jump operator shape does not match the Hamiltonian");
    }
  }
}

// ---------------------------------------------------------------------------
// Channel actions

DensityMatrix apply_pauli_channel(const PauliChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != (std::size_t{1} << ch.n_qubits())) {
    throw DimensionError("apply_pauli_channel: channel on " + std::to_string(ch.n_qubits()) +
                         " qubits, state of dimension " + std::to_string(rho.dim()));
  }
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (const auto& t : ch.terms()) {
    if (t.weight == 0.0) continue;
    if (t.pauli.is_identity()) {
      out += t.weight * rho.matrix();
    } else {
      out += t.weight * conjugate(t.pauli, rho.matrix());
    }
  }
  return DensityMatrix(std::move(out), Validation::kNone);
}

DensityMatrix apply_kraus(const KrausChannel& ch, const DensityMatrix& rho) {
  if (ch.dim() != rho.dim()) throw DimensionError("apply_kraus: dimension mismatch");
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (const auto& k : ch.operators()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix(std::move(out), Validation::kNone);
}

Matrix lindblad_rhs(const Matrix& rho, const LindbladSpec& spec) {
  if (rho.rows() != spec.hamiltonian.rows() || rho.cols() != spec.hamiltonian.cols()) {
    throw DimensionError("lindblad_rhs: state and Hamiltonian dimensions differ");
  }
  const Complex i{0.0, 1.0};
  const Matrix& h = spec.hamiltonian;
  Matrix out = i * (rho * h - h * rho);
  for (const auto& g : spec.jump_operators) {
    const Matrix gdg = g.adjoint() * g;
    out += g * rho * g.adjoint() - 0.5 * (gdg * rho + rho * gdg);
  }
  return out;
}

Matrix lindblad_rhs(const DensityMatrix& rho, const LindbladSpec& spec) {
  return lindblad_rhs(rho.matrix(), spec);
}

std::vector<DensityMatrix> evolve_lindblad_rk4(const DensityMatrix& rho0, const LindbladSpec& spec,
                                               double dt, std::size_t steps) {
  spec.validate();
  rho0.validate(Validation::kFull);
  if (!(dt > 0.0)) throw std::invalid_argument("evolve_lindblad_rk4: dt must be positive");
  std::vector<DensityMatrix> out;
  out.reserve(steps + 1);
  out.push_back(rho0);
  Matrix rho = rho0.matrix();
  for (std::size_t s = 0; s < steps; ++s) {
    const Matrix k1 = lindblad_rhs(rho, spec);
    const Matrix k2 = lindblad_rhs(Matrix(rho + 0.5 * dt * k1), spec);
    const Matrix k3 = lindblad_rhs(Matrix(rho + 0.5 * dt * k2), spec);
    const Matrix k4 = lindblad_rhs(Matrix(rho + dt * k3), spec);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = hermitize(rho);
    out.emplace_back(rho, Validation::kNone);
  }
  return out;
}

TruncatedKraus lindblad_to_kraus(const LindbladSpec& spec, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("lindblad_to_kraus: dt must be positive");
  spec.validate();
  const std::size_t dim = spec.dim();
  const Complex i{0.0, 1.0};
  Matrix drift = i * spec.hamiltonian;
  for (const auto& l : spec.jump_operators) drift += 0.5 * l.adjoint() * l;
  std::vector<Matrix> ops;
  ops.push_back(Matrix::Identity(dim, dim) - drift * dt);
  for (const auto& l : spec.jump_operators) ops.push_back(std::sqrt(dt) * l);
  KrausChannel ch(std::move(ops));
  const double defect = ch.completeness_defect();
  return {std::move(ch), defect};
}

PauliChannel twirl(const KrausChannel& ch, double prune_below) {
  const std::size_t n = log2_exact(ch.dim());
  const double norm = double(ch.dim()) * double(ch.dim());
  std::vector<PauliTerm> terms;
  double total = 0.0;
  for (auto& p : all_pauli_strings(n)) {
    double w = 0.0;
    for (const auto& k : ch.operators()) w += std::norm(trace_product(p, k));
    w /= norm;
    total += w;
    if (w > prune_below) terms.push_back({w, std::move(p)});
  }
  if (std::abs(total - 1.0) > tolerance::kKraus) {
    throw InvariantError("twirl: input is not trace preserving (weights sum to " +
                         std::to_string(total) + ")");
  }
  double kept = 0.0;
  for (const auto& t : terms) kept += t.weight;
  for (auto& t : terms) t.weight /= kept;
  return PauliChannel(n, std::move(terms));
}

KrausChannel as_kraus(const PauliChannel& ch) {
  std::vector<Matrix> ops;
  for (const auto& t : ch.terms()) {
    if (t.weight > 0.0) ops.push_back(std::sqrt(t.weight) * to_matrix(t.pauli));
  }
  return KrausChannel(std::move(ops));
}

PauliChannel mix(const std::vector<std::pair<double, PauliChannel>>& channels) {
  if (channels.empty()) throw std::invalid_argument("mix: no channels");
  const std::size_t n = channels.front().second.n_qubits();
  double total = 0.0;
  std::vector<PauliTerm> terms;
  for (const auto& [p, ch] : channels) {
    if (!(p >= 0.0)) throw InvariantError("mix: negative probability");
    if (ch.n_qubits() != n) throw DimensionError("mix: channels act on different registers");
    total += p;
    for (const auto& t : ch.terms()) terms.push_back({p * t.weight, t.pauli});
  }
  if (std::abs(total - 1.0) > tolerance::kWeightSum) {
    throw InvariantError("mix: probabilities sum to " + std::to_string(total));
  }
  return PauliChannel(n, std::move(terms));
}

PauliChannel compose(const PauliChannel& first, const PauliChannel& second) {
  if (first.n_qubits() != second.n_qubits()) throw DimensionError("compose: register mismatch");
  std::vector<PauliTerm> terms;
  terms.reserve(first.terms().size() * second.terms().size());
  for (const auto& a : first.terms()) {
    for (const auto& b : second.terms()) {
      terms.push_back({a.weight * b.weight, multiply(b.pauli, a.pauli).string});
    }
  }
  return PauliChannel(first.n_qubits(), std::move(terms));
}

double weight_l1_distance(const PauliChannel& a, const PauliChannel& b) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionError("weight_l1_distance: register mismatch");
  std::map<PauliString, double> diff;
  for (const auto& t : a.terms()) diff[t.pauli] += t.weight;
  for (const auto& t : b.terms()) diff[t.pauli] -= t.weight;
  double total = 0.0;
  for (const auto& [p, d] : diff) total += std::abs(d);
  return total;
}

LindbladSpec dephasing_z_preset(std::size_t n_qubits, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("dephasing rate must be non-negative");
  const std::size_t dim = std::size_t{1} << n_qubits;
  LindbladSpec spec{Matrix::Zero(dim, dim), {}};
  for (std::size_t q = 0; q < n_qubits; ++q) {
    PauliString z(n_qubits);
    z.set(q, false, true);
    spec.jump_operators.push_back(std::sqrt(gamma) * to_matrix(z));
  }
  return spec;
}

}  // namespace noisesim
