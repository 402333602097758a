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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "noisesim/channels.hpp"
#include "noisesim/pauli.hpp"

namespace noisesim {

using PauliSet = std::set<PauliString>;

/// Decoherence-free cluster of a node under a set of noise strings.
struct ClusterReport {
  PauliString node;
  PauliSet noise_support;  // identity excluded
  PauliSet members;        // the orbit; d_c = members.size()
  PauliSet braid;          // one-step branches excluding the node
  std::size_t braid_dimension = 0;    // d_b
  std::size_t cluster_dimension = 0;  // d_c
  double entropy = 0.0;               // ln(d_c / (d_b + 1)), k = 1
  bool all_to_all = false;            // d_c == d_b + 1
};

/// Smallest set containing `node` that is closed under left multiplication
/// by every noise string (phases dropped). Breadth-first closure.
PauliSet orbit(const PauliString& node, const PauliSet& noise_support);

ClusterReport classify(const PauliString& node, const PauliSet& noise_support);

/// True when every member generates the same orbit.
bool node_invariance_check(const PauliSet& members, const PauliSet& noise_support);

/// Non-identity strings of a channel.
PauliSet support_of(const PauliChannel& noise);

/// Qubit-pair placements (0-based first qubit of each adjacent pair).
using Placement = std::size_t;

/// Default disjoint placement {0, 2, 4, ...} for an even register.
std::vector<Placement> disjoint_pairs(std::size_t n_qubits);

/// Lifts a two-qubit channel to N qubits by composing one copy per listed
/// adjacent-pair placement, in order. With the default disjoint placement
/// this is the product channel whose weights multiply across pairs.
PauliChannel lift_noise_nn(const PauliChannel& base, std::size_t n_qubits);
PauliChannel lift_noise_nn(const PauliChannel& base, std::size_t n_qubits,
                           const std::vector<Placement>& placements);

/// (m + 1)^(N/2) - 1 system channels reachable from one node per iteration.
std::size_t channels_per_iteration(std::size_t m, std::size_t n_qubits);

/// Graphviz rendering of the one-step mapping edges (node -> branch,
/// labeled by noise string) for every member of the cluster.
std::string to_dot(const ClusterReport& report);

}  // namespace noisesim
