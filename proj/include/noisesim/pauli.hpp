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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "noisesim/types.hpp"

namespace noisesim {

/// Element of {+1, +i, -1, -i}, stored as the exponent k of i^k.
enum class Phase : std::uint8_t { kPlusOne = 0, kPlusI = 1, kMinusOne = 2, kMinusI = 3 };

Phase operator*(Phase a, Phase b);
Complex to_complex(Phase p);
std::string render(Phase p);

/// An n-qubit Pauli string in symplectic form. Qubit q (0-based) carries
/// the letter determined by bit q of the x and z masks:
/// (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y.
///
/// Text form puts qubit 0 first, so "XZ" is X on qubit 0 and Z on qubit 1.
/// The same qubit is the most significant tensor factor in to_matrix().
class PauliString {
 public:
  PauliString() = default;

  /// Identity on n qubits.
  explicit PauliString(std::size_t n_qubits);

  static PauliString identity(std::size_t n_qubits) { return PauliString(n_qubits); }

  std::size_t n_qubits() const noexcept { return n_; }

  bool x(std::size_t q) const { return (x_[q / 64] >> (q % 64)) & 1u; }
  bool z(std::size_t q) const { return (z_[q / 64] >> (q % 64)) & 1u; }
  void set(std::size_t q, bool x, bool z);

  char letter(std::size_t q) const;
  bool is_identity() const noexcept;
  /// Number of non-identity letters.
  std::size_t weight() const noexcept;

  const std::vector<std::uint64_t>& x_words() const noexcept { return x_; }
  const std::vector<std::uint64_t>& z_words() const noexcept { return z_; }

  friend bool operator==(const PauliString&, const PauliString&) = default;
  /// Lexicographic order of the rendered text (I < X < Y < Z).
  friend bool operator<(const PauliString& a, const PauliString& b);

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
};

struct PhasedPauli {
  Phase phase = Phase::kPlusOne;
  PauliString string;

  friend bool operator==(const PhasedPauli&, const PhasedPauli&) = default;
};

/// Parses "XZIY"-style text. Throws ParseError naming the offending position.
PauliString parse_pauli(std::string_view text);
std::string render(const PauliString& p);

/// Product a*b with exact phase tracking. Throws DimensionError on length mismatch.
PhasedPauli multiply(const PauliString& a, const PauliString& b);

/// Concatenation: a acts on the leading qubits, b on the trailing ones.
PauliString tensor(const PauliString& a, const PauliString& b);

/// Places `local` on qubits [offset, offset + local.n_qubits()) of an
/// n-qubit identity.
PauliString embed(const PauliString& local, std::size_t n_qubits, std::size_t offset);

/// All 4^n strings in lexicographic order.
std::vector<PauliString> all_pauli_strings(std::size_t n_qubits);

inline constexpr std::size_t kDefaultMatrixQubitCap = 10;

/// Dense 2^n x 2^n realization. Throws DimensionError above the cap.
Matrix to_matrix(const PauliString& p, std::size_t max_qubits = kDefaultMatrixQubitCap);
Matrix to_matrix(const PhasedPauli& p, std::size_t max_qubits = kDefaultMatrixQubitCap);

/// P rho P^dagger without forming P. The phase of a PhasedPauli cancels,
/// so only the string is needed.
Matrix conjugate(const PauliString& p, const Matrix& rho);
Matrix conjugate(const PhasedPauli& p, const Matrix& rho);

/// Tr(P M) without forming P.
Complex trace_product(const PauliString& p, const Matrix& m);

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const noexcept;
};

}  // namespace noisesim
