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

#include "noisesim/random.hpp"

#include <algorithm>

namespace noisesim {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

PauliString random_pauli_string(std::size_t n_qubits, Rng& rng) {
  std::uniform_int_distribution<int> bit(0, 1);
  PauliString p(n_qubits);
  for (std::size_t q = 0; q < n_qubits; ++q) p.set(q, bit(rng) == 1, bit(rng) == 1);
  return p;
}

DensityMatrix random_density_matrix(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = 0; r < dim; ++r) g(r, c) = Complex(normal(rng), normal(rng));
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(std::move(rho), Validation::kNone);
}

PauliChannel random_pauli_channel(std::size_t n_qubits, Rng& rng) {
  const std::size_t total = std::size_t{1} << (2 * n_qubits);
  std::uniform_int_distribution<std::size_t> size(1, total);
  return random_pauli_channel(n_qubits, size(rng), rng);
}

PauliChannel random_pauli_channel(std::size_t n_qubits, std::size_t support_size, Rng& rng) {
  auto strings = all_pauli_strings(n_qubits);
  if (support_size == 0 || support_size > strings.size()) {
    throw std::invalid_argument("random_pauli_channel: support size out of range");
  }
  // Partial Fisher-Yates with an explicit draw so the sequence is portable.
  for (std::size_t i = 0; i < support_size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, strings.size() - 1);
    std::swap(strings[i], strings[pick(rng)]);
  }
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(support_size);
  double sum = 0.0;
  for (auto& x : w) {
    x = expo(rng);
    sum += x;
  }
  std::vector<PauliTerm> terms;
  for (std::size_t i = 0; i < support_size; ++i) terms.push_back({w[i] / sum, strings[i]});
  return PauliChannel(n_qubits, std::move(terms));
}

}  // namespace noisesim
