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
#include <random>

#include "noisesim/channels.hpp"
#include "noisesim/pauli.hpp"

namespace noisesim {

using Rng = std::mt19937_64;

/// Independent seed for item `index` of a run seeded with `base`
/// (splitmix64 finalizer). Results do not depend on how items are
/// distributed across threads.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

PauliString random_pauli_string(std::size_t n_qubits, Rng& rng);

/// GG^dag / Tr(GG^dag) with G drawn from the standard complex normal ensemble.
DensityMatrix random_density_matrix(std::size_t dim, Rng& rng);

/// Random support of uniform size in [1, 4^n] with Dirichlet(1) weights.
PauliChannel random_pauli_channel(std::size_t n_qubits, Rng& rng);

/// Random support of exactly `support_size` strings with Dirichlet(1) weights.
PauliChannel random_pauli_channel(std::size_t n_qubits, std::size_t support_size, Rng& rng);

}  // namespace noisesim
