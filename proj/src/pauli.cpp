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

#include "noisesim/pauli.hpp"

#include <bit>
#include <string>

namespace noisesim {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

// Rank of the rendered letter for lexicographic order: I < X < Y < Z.
int letter_rank(bool x, bool z) {
  if (!x && !z) return 0;
  if (x && !z) return 1;
  if (x && z) return 2;
  return 3;
}

// Exponent of i picked up by the single-qubit product (x1,z1)*(x2,z2).
int product_phase_exponent(bool x1, bool z1, bool x2, bool z2) {
  if (!x1 && !z1) return 0;
  if (x1 && z1) return int(z2) - int(x2);  // Y*Z = iX, Y*X = -iZ
  if (x1) return int(z2) * (2 * int(x2) - 1);  // X*Y = iZ, X*Z = -iY
  return int(x2) * (1 - 2 * int(z2));  // Z*X = iY, Z*Y = -iX
}

void require_same_length(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionError("Pauli length mismatch: " + std::to_string(a.n_qubits()) + " vs " +
                         std::to_string(b.n_qubits()));
  }
}

// Basis-index bit of qubit q in an n-qubit register (qubit 0 is the MSB).
inline std::size_t qubit_bit(std::size_t n, std::size_t q) { return std::size_t{1} << (n - 1 - q); }

struct PermutationForm {
  std::size_t flip = 0;   // row = col ^ flip
  std::size_t zmask = 0;  // sign (-1)^popcount(col & zmask)
  Complex base{1.0, 0.0}; // i^(#Y)
};

PermutationForm permutation_form(const PauliString& p) {
  const std::size_t n = p.n_qubits();
  PermutationForm f;
  int ys = 0;
  for (std::size_t q = 0; q < n; ++q) {
    if (p.x(q)) f.flip |= qubit_bit(n, q);
    if (p.z(q)) f.zmask |= qubit_bit(n, q);
    if (p.x(q) && p.z(q)) ++ys;
  }
  f.base = to_complex(static_cast<Phase>(ys % 4));
  return f;
}

// Entry P[col ^ flip, col].
inline Complex column_value(const PermutationForm& f, std::size_t col) {
  return (std::popcount(col & f.zmask) & 1) ? -f.base : f.base;
}

}  // namespace

Phase operator*(Phase a, Phase b) {
  return static_cast<Phase>((static_cast<int>(a) + static_cast<int>(b)) % 4);
}

Complex to_complex(Phase p) {
  switch (p) {
    case Phase::kPlusOne: return {1.0, 0.0};
    case Phase::kPlusI: return {0.0, 1.0};
    case Phase::kMinusOne: return {-1.0, 0.0};
    case Phase::kMinusI: return {0.0, -1.0};
  }
  return {1.0, 0.0};
}

std::string render(Phase p) {
  switch (p) {
    case Phase::kPlusOne: return "+1";
    case Phase::kPlusI: return "+i";
    case Phase::kMinusOne: return "-1";
    case Phase::kMinusI: return "-i";
  }
  return "+1";
}

PauliString::PauliString(std::size_t n_qubits)
    : n_(n_qubits), x_(word_count(n_qubits), 0), z_(word_count(n_qubits), 0) {}

void PauliString::set(std::size_t q, bool x, bool z) {
  const std::uint64_t bit = std::uint64_t{1} << (q % 64);
  auto& xw = x_[q / 64];
  auto& zw = z_[q / 64];
  xw = x ? (xw | bit) : (xw & ~bit);
  zw = z ? (zw | bit) : (zw & ~bit);
}

char PauliString::letter(std::size_t q) const {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  return kLetters[letter_rank(x(q), z(q))];
}

bool PauliString::is_identity() const noexcept {
  for (std::size_t w = 0; w < x_.size(); ++w) {
    if (x_[w] | z_[w]) return false;
  }
  return true;
}

std::size_t PauliString::weight() const noexcept {
  std::size_t total = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) total += std::popcount(x_[w] | z_[w]);
  return total;
}

bool operator<(const PauliString& a, const PauliString& b) {
  const std::size_t n = std::min(a.n_, b.n_);
  for (std::size_t q = 0; q < n; ++q) {
    const int ra = letter_rank(a.x(q), a.z(q));
    const int rb = letter_rank(b.x(q), b.z(q));
    if (ra != rb) return ra < rb;
  }
  return a.n_ < b.n_;
}

PauliString parse_pauli(std::string_view text) {
  if (text.empty()) throw ParseError("empty Pauli string", 0);
  PauliString p(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) {
    switch (text[q]) {
      case 'I': break;
      case 'X': p.set(q, true, false); break;
      case 'Y': p.set(q, true, true); break;
      case 'Z': p.set(q, false, true); break;
      default:
        throw ParseError("invalid Pauli character '" + std::string(1, text[q]) +
                             "' at position " + std::to_string(q),
                         q);
    }
  }
  return p;
}

std::string render(const PauliString& p) {
  std::string out(p.n_qubits(), 'I');
  for (std::size_t q = 0; q < p.n_qubits(); ++q) out[q] = p.letter(q);
  return out;
}

PhasedPauli multiply(const PauliString& a, const PauliString& b) {
  require_same_length(a, b);
  PhasedPauli out{Phase::kPlusOne, PauliString(a.n_qubits())};
  int exponent = 0;
  for (std::size_t q = 0; q < a.n_qubits(); ++q) {
    const bool x1 = a.x(q), z1 = a.z(q), x2 = b.x(q), z2 = b.z(q);
    exponent += product_phase_exponent(x1, z1, x2, z2);
    out.string.set(q, x1 != x2, z1 != z2);
  }
  out.phase = static_cast<Phase>(((exponent % 4) + 4) % 4);
  return out;
}

PauliString tensor(const PauliString& a, const PauliString& b) {
  PauliString out(a.n_qubits() + b.n_qubits());
  for (std::size_t q = 0; q < a.n_qubits(); ++q) out.set(q, a.x(q), a.z(q));
  for (std::size_t q = 0; q < b.n_qubits(); ++q) out.set(a.n_qubits() + q, b.x(q), b.z(q));
  return out;
}

PauliString embed(const PauliString& local, std::size_t n_qubits, std::size_t offset) {
  if (offset + local.n_qubits() > n_qubits) {
    throw DimensionError("embedding exceeds register: offset " + std::to_string(offset) +
                         " + " + std::to_string(local.n_qubits()) + " > " +
                         std::to_string(n_qubits));
  }
  PauliString out(n_qubits);
  for (std::size_t q = 0; q < local.n_qubits(); ++q) out.set(offset + q, local.x(q), local.z(q));
  return out;
}

std::vector<PauliString> all_pauli_strings(std::size_t n_qubits) {
  // Base-4 counting over letter ranks yields lexicographic order directly.
  static constexpr bool kX[] = {false, true, true, false};
  static constexpr bool kZ[] = {false, false, true, true};
  const std::size_t total = std::size_t{1} << (2 * n_qubits);
  std::vector<PauliString> out;
  out.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    PauliString p(n_qubits);
    for (std::size_t q = 0; q < n_qubits; ++q) {
      const std::size_t digit = (code >> (2 * (n_qubits - 1 - q))) & 3u;
      p.set(q, kX[digit], kZ[digit]);
    }
    out.push_back(std::move(p));
  }
  return out;
}

Matrix to_matrix(const PauliString& p, std::size_t max_qubits) {
  if (p.n_qubits() > max_qubits) {
    throw DimensionError("dense Pauli matrix requested for " + std::to_string(p.n_qubits()) +
                         " qubits; cap is " + std::to_string(max_qubits));
  }
  const std::size_t dim = std::size_t{1} << p.n_qubits();
  const auto form = permutation_form(p);
  Matrix m = Matrix::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) m(col ^ form.flip, col) = column_value(form, col);
  return m;
}

Matrix to_matrix(const PhasedPauli& p, std::size_t max_qubits) {
  return to_complex(p.phase) * to_matrix(p.string, max_qubits);
}

Matrix conjugate(const PauliString& p, const Matrix& rho) {
  const std::size_t dim = std::size_t{1} << p.n_qubits();
  if (std::size_t(rho.rows()) != dim || std::size_t(rho.cols()) != dim) {
    throw DimensionError("conjugate: Pauli on " + std::to_string(p.n_qubits()) +
                         " qubits applied to a " + std::to_string(rho.rows()) + "x" +
                         std::to_string(rho.cols()) + " matrix");
  }
  const auto form = permutation_form(p);
  // (P rho P^dag)[r ^ f, c ^ f] = v(r) rho[r, c] conj(v(c)); |base|^2 = 1 so
  // only the relative sign survives.
  Matrix out(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const double sc = (std::popcount(c & form.zmask) & 1) ? -1.0 : 1.0;
    for (std::size_t r = 0; r < dim; ++r) {
      const double sr = (std::popcount(r & form.zmask) & 1) ? -1.0 : 1.0;
      out(r ^ form.flip, c ^ form.flip) = (sr * sc) * rho(r, c);
    }
  }
  return out;
}

Matrix conjugate(const PhasedPauli& p, const Matrix& rho) { return conjugate(p.string, rho); }

Complex trace_product(const PauliString& p, const Matrix& m) {
  const std::size_t dim = std::size_t{1} << p.n_qubits();
  if (std::size_t(m.rows()) != dim || std::size_t(m.cols()) != dim) {
    throw DimensionError("trace_product: dimension mismatch");
  }
  const auto form = permutation_form(p);
  Complex acc{0.0, 0.0};
  // Tr(P M) = sum_c P[c^f, c] M[c, c^f]
  for (std::size_t c = 0; c < dim; ++c) acc += column_value(form, c) * m(c, c ^ form.flip);
  return acc;
}

std::size_t PauliStringHash::operator()(const PauliString& p) const noexcept {
  std::size_t h = std::hash<std::size_t>{}(p.n_qubits());
  for (std::size_t w = 0; w < p.x_words().size(); ++w) {
    h ^= std::hash<std::uint64_t>{}(p.x_words()[w]) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= std::hash<std::uint64_t>{}(p.z_words()[w]) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace noisesim
