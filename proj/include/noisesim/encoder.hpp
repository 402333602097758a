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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "noisesim/channels.hpp"
#include "noisesim/pauli.hpp"

namespace noisesim {

class EncodingError : public std::runtime_error {
 public:
  EncodingError(const std::string& what, double over_mass)
      : std::runtime_error(what), over_mass_(over_mass) {}
  double over_mass() const noexcept { return over_mass_; }

 private:
  double over_mass_;
};

inline constexpr double kConservationTolerance = 1e-10;

/// Signed residues of the target channel still to be realized, plus the
/// probability mass already encoded. sum(entries) + encoded_mass == 1.
struct ResidueLedger {
  std::map<PauliString, double> entries;
  double encoded_mass = 0.0;

  static ResidueLedger from_channel(const PauliChannel& system);

  double residue(const PauliString& p) const;
  double conservation_error() const;
  /// max |residue| over non-identity strings. The identity component of a
  /// target channel is realized by not firing a gate, so it is never an
  /// encoding target.
  double max_abs_target_residue() const;
};

struct Branch {
  double mass = 0.0;
  PauliString pauli;

  friend bool operator==(const Branch&, const Branch&) = default;
};

struct EncodingStep {
  std::size_t iteration = 0;
  PauliString node;
  double node_mass = 0.0;
  std::vector<Branch> branches;
};

enum class StopReason { kAllWithinTol, kMaxIters, kStalled };
std::string render(StopReason r);

struct EncodingSchedule {
  std::size_t n_qubits = 0;
  std::vector<EncodingStep> steps;
  ResidueLedger final_ledger;
  bool converged = false;
  StopReason stop_reason = StopReason::kMaxIters;
  std::string diagnostic;
};

struct ResidueSnapshot {
  std::size_t iteration = 0;
  std::map<PauliString, double> residues;
  double encoded_mass = 0.0;
};

struct ConvergenceTrace {
  std::vector<ResidueSnapshot> snapshots;

  /// Every string that appears in any snapshot, in lexicographic order.
  std::vector<PauliString> tracked_strings() const;
};

struct EncodingResult {
  EncodingSchedule schedule;
  ConvergenceTrace trace;
};

/// Branches (node_mass * w_i, P_i * node) for each nonzero noise term.
/// Phases are dropped: they cancel under conjugation.
std::vector<Branch> expand_node(const PauliString& node, double node_mass,
                                const PauliChannel& noise);

/// Fixed-node partial encoding. Every iteration encodes `node` with the
/// positive residue mass its branches can reach, clamped to the unencoded
/// mass, and subtracts the branches from the ledger. Stops when all target
/// residues are within tol, when no branch target has residue above tol
/// (stalled), or after max_iters.
EncodingResult encode_fixed(const PauliChannel& system, const PauliChannel& noise,
                            const PauliString& node, std::size_t max_iters, double tol);

inline constexpr double kDefaultAdaptiveTolerance = 0.1;

/// Adaptive encoding. Each iteration pairs the largest positive target
/// residue with the heaviest noise string, encodes the node that maps one
/// onto the other, and sizes it so that branch cancels the residue exactly.
/// Runs while any target residue exceeds tol.
EncodingResult encode_adaptive(const PauliChannel& system, const PauliChannel& noise, double tol,
                               std::size_t max_iters);

struct EffectiveChannel {
  PauliChannel channel;
  double encoded_mass = 0.0;
  /// Unencoded mass realized as the identity.
  double identity_remainder = 0.0;
};

/// Sums branch masses per string across all steps; the unencoded mass goes
/// to the identity. The result does not depend on step order. Throws
/// EncodingError when more than unit mass was encoded.
EffectiveChannel effective_channel(const EncodingSchedule& schedule);

struct OverEncodedString {
  PauliString pauli;
  double min_residue = 0.0;
  std::size_t first_crossing = 0;
  double final_residue = 0.0;
};

/// Strings whose residue ever dropped below -tol.
std::vector<OverEncodedString> overencoding_report(const ConvergenceTrace& trace, double tol);

}  // namespace noisesim
