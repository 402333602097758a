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

#include "noisesim/clusters.hpp"

#include <cmath>
#include <deque>
#include <sstream>

namespace noisesim {

namespace {

void require_common_register(const PauliString& node, const PauliSet& noise) {
  for (const auto& p : noise) {
    if (p.n_qubits() != node.n_qubits()) {
      throw DimensionError("noise string " + render(p) + " does not match node " + render(node));
    }
  }
}

void require_even(std::size_t n_qubits) {
  if (n_qubits < 2 || n_qubits % 2 != 0) {
    throw std::invalid_argument("nearest-neighbor lift needs an even register of at least 2 qubits, got " +
                                std::to_string(n_qubits));
  }
}

}  // namespace

PauliSet orbit(const PauliString& node, const PauliSet& noise_support) {
  require_common_register(node, noise_support);
  PauliSet seen{node};
  std::deque<PauliString> frontier{node};
  while (!frontier.empty()) {
    const PauliString current = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& n : noise_support) {
      PauliString next = multiply(n, current).string;
      if (seen.insert(next).second) frontier.push_back(std::move(next));
    }
  }
  return seen;
}

ClusterReport classify(const PauliString& node, const PauliSet& noise_support) {
  ClusterReport r;
  r.node = node;
  for (const auto& p : noise_support) {
    if (!p.is_identity()) r.noise_support.insert(p);
  }
  r.members = orbit(node, r.noise_support);
  for (const auto& p : r.noise_support) {
    PauliString b = multiply(p, node).string;
    if (b != node) r.braid.insert(std::move(b));
  }
  r.braid_dimension = r.braid.size();
  r.cluster_dimension = r.members.size();
  r.entropy = std::log(double(r.cluster_dimension) / double(r.braid_dimension + 1));
  r.all_to_all = r.cluster_dimension == r.braid_dimension + 1;
  return r;
}

bool node_invariance_check(const PauliSet& members, const PauliSet& noise_support) {
  for (const auto& m : members) {
    if (orbit(m, noise_support) != members) return false;
  }
  return true;
}

PauliSet support_of(const PauliChannel& noise) {
  PauliSet out;
  for (const auto& t : noise.terms()) {
    if (t.weight > 0.0 && !t.pauli.is_identity()) out.insert(t.pauli);
  }
  return out;
}

std::vector<Placement> disjoint_pairs(std::size_t n_qubits) {
  require_even(n_qubits);
  std::vector<Placement> out;
  for (std::size_t q = 0; q + 1 < n_qubits; q += 2) out.push_back(q);
  return out;
}

PauliChannel lift_noise_nn(const PauliChannel& base, std::size_t n_qubits) {
  return lift_noise_nn(base, n_qubits, disjoint_pairs(n_qubits));
}

PauliChannel lift_noise_nn(const PauliChannel& base, std::size_t n_qubits,
                           const std::vector<Placement>& placements) {
  if (base.n_qubits() != 2) throw DimensionError("lift_noise_nn: base channel must act on 2 qubits");
  require_even(n_qubits);
  PauliChannel lifted = PauliChannel::identity(n_qubits);
  for (Placement q : placements) {
    if (q + 1 >= n_qubits) {
      throw DimensionError("placement (" + std::to_string(q) + ", " + std::to_string(q + 1) +
                           ") outside a " + std::to_string(n_qubits) + "-qubit register");
    }
    std::vector<PauliTerm> terms;
    for (const auto& t : base.terms()) terms.push_back({t.weight, embed(t.pauli, n_qubits, q)});
    lifted = compose(lifted, PauliChannel(n_qubits, std::move(terms)));
  }
  return lifted;
}

std::size_t channels_per_iteration(std::size_t m, std::size_t n_qubits) {
  require_even(n_qubits);
  std::size_t total = 1;
  for (std::size_t k = 0; k < n_qubits / 2; ++k) total *= (m + 1);
  return total - 1;
}

std::string to_dot(const ClusterReport& report) {
  std::ostringstream os;
  os << "digraph cluster {\n";
  os << "  \"" << render(report.node) << "\" [shape=doublecircle];\n";
  for (const auto& m : report.members) {
    if (m != report.node) os << "  \"" << render(m) << "\";\n";
  }
  for (const auto& m : report.members) {
    for (const auto& n : report.noise_support) {
      const PauliString b = multiply(n, m).string;
      os << "  \"" << render(m) << "\" -> \"" << render(b) << "\" [label=\"" << render(n) << "\"";
      if (m == report.node) os << ", color=blue";
      os << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace noisesim
