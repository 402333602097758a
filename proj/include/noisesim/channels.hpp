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

#include <string>
#include <utility>
#include <vector>

#include "noisesim/pauli.hpp"
#include "noisesim/types.hpp"

namespace noisesim {

namespace tolerance {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kEigenvalue = -1e-9;
inline constexpr double kWeightSum = 1e-12;
inline constexpr double kKraus = 1e-10;
}  // namespace tolerance

/// How much of the DensityMatrix invariant set to verify on construction.
enum class Validation {
  kFull,        // Hermitian, unit trace, eigenvalues >= -1e-9
  kStructural,  // Hermitian and unit trace only
  kNone,
};

/// Density operator on a power-of-two dimensional space.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries, Validation check = Validation::kFull);

  /// |index><index| in the computational basis.
  static DensityMatrix basis_state(std::size_t dim, std::size_t index);
  static DensityMatrix pure(const Vector& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const noexcept { return std::size_t(entries_.rows()); }
  std::size_t n_qubits() const noexcept { return log2_exact(dim()); }
  const Matrix& matrix() const noexcept { return entries_; }

  /// Throws InvariantError listing the first violated invariant.
  void validate(Validation check = Validation::kFull) const;
  double min_eigenvalue() const;

 private:
  Matrix entries_;
};

struct PauliTerm {
  double weight = 0.0;
  PauliString pauli;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

/// Convex mixture rho -> sum_i w_i P_i rho P_i. Terms are kept merged and
/// sorted by string so equal channels compare equal term-by-term.
class PauliChannel {
 public:
  /// Validates weights (non-negative, summing to one within 1e-12) and a
  /// common qubit count. Duplicate strings are merged.
  PauliChannel(std::size_t n_qubits, std::vector<PauliTerm> terms);

  static PauliChannel identity(std::size_t n_qubits);
  /// Convenience for literals: {{0.6, "XZ"}, {0.4, "IY"}}.
  static PauliChannel from_text(const std::vector<std::pair<double, std::string>>& terms);

  std::size_t n_qubits() const noexcept { return n_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  /// Weight of `p`, 0 when absent.
  double weight_of(const PauliString& p) const;

  friend bool operator==(const PauliChannel&, const PauliChannel&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<PauliTerm> terms_;
};

class KrausChannel {
 public:
  explicit KrausChannel(std::vector<Matrix> operators);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Matrix>& operators() const noexcept { return ops_; }
  /// Frobenius norm of sum_i K_i^dag K_i - I.
  double completeness_defect() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Matrix> ops_;
};

/// Markovian generator data: H (hbar = 1) and jump operators Gamma_i.
struct LindbladSpec {
  Matrix hamiltonian;
  std::vector<Matrix> jump_operators;

  /// Throws InvariantError when H is not Hermitian within 1e-10 or the
  /// jump operators do not match its shape.
  void validate() const;
  std::size_t dim() const noexcept { return std::size_t(hamiltonian.rows()); }
};

struct TruncatedKraus {
  KrausChannel channel;
  double completeness_defect = 0.0;
};

DensityMatrix apply_pauli_channel(const PauliChannel& ch, const DensityMatrix& rho);
DensityMatrix apply_kraus(const KrausChannel& ch, const DensityMatrix& rho);

/// d rho / dt = i[rho, H] + sum_i (G rho G^dag - 1/2 {G^dag G, rho}).
/// Accepts any square matrix so the integrator can evaluate intermediate stages.
Matrix lindblad_rhs(const Matrix& rho, const LindbladSpec& spec);
Matrix lindblad_rhs(const DensityMatrix& rho, const LindbladSpec& spec);

/// Classical RK4 reference integrator. Returns steps + 1 snapshots
/// including rho0; each snapshot is re-hermitized. Stable for
/// dt <= 0.1 / max|eig H| or so.
std::vector<DensityMatrix> evolve_lindblad_rk4(const DensityMatrix& rho0, const LindbladSpec& spec,
                                               double dt, std::size_t steps);

/// First-order Kraus map K_0 = I - (iH + 1/2 sum L^dag L) dt, K_i = sqrt(dt) L_i.
TruncatedKraus lindblad_to_kraus(const LindbladSpec& spec, double dt);

/// w_P = |Tr(P K)|^2 / 4^n summed over Kraus operators. Weights at or below
/// `prune_below` are dropped and the rest renormalized to absorb rounding.
PauliChannel twirl(const KrausChannel& ch, double prune_below = 1e-14);

/// Kraus form {sqrt(w_i) P_i}.
KrausChannel as_kraus(const PauliChannel& ch);

/// Convex combination of Pauli channels on the same register.
PauliChannel mix(const std::vector<std::pair<double, PauliChannel>>& channels);

/// Sequential composition (second applied after first). Pauli channels
/// compose by convolving their weights over the group.
PauliChannel compose(const PauliChannel& first, const PauliChannel& second);

/// L1 distance between weight vectors.
double weight_l1_distance(const PauliChannel& a, const PauliChannel& b);

/// Named generator presets.
LindbladSpec dephasing_z_preset(std::size_t n_qubits, double gamma);

}  // namespace noisesim
