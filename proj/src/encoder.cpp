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

#include "noisesim/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace noisesim {

namespace {

void require_same_register(const PauliChannel& system, const PauliChannel& noise) {
  if (system.n_qubits() != noise.n_qubits()) {
    throw DimensionError("system channel on " + std::to_string(system.n_qubits()) +
                         " qubits, noise on " + std::to_string(noise.n_qubits()));
  }
}

bool all_targets_within(const ResidueLedger& ledger, double tol) {
  return ledger.max_abs_target_residue() <= tol;
}

ResidueSnapshot snapshot(std::size_t iteration, const ResidueLedger& ledger) {
  return {iteration, ledger.entries, ledger.encoded_mass};
}

// Subtracts the branches from the ledger and records the step.
void apply_step(EncodingResult& result, ResidueLedger& ledger, const PauliString& node,
                double mass, const PauliChannel& noise) {
  EncodingStep step{result.schedule.steps.size() + 1, node, mass, expand_node(node, mass, noise)};
  double encoded = 0.0;
  for (const auto& b : step.branches) {
    ledger.entries[b.pauli] -= b.mass;
    encoded += b.mass;
  }
  ledger.encoded_mass += encoded;
  if (ledger.conservation_error() > kConservationTolerance) {
    throw InvariantError("residue conservation violated at iteration " +
                         std::to_string(step.iteration));
  }
  result.trace.snapshots.push_back(snapshot(step.iteration, ledger));
  result.schedule.steps.push_back(std::move(step));
}

void finish(EncodingResult& result, const ResidueLedger& ledger, bool converged, StopReason reason,
            std::string diagnostic = {}) {
  result.schedule.final_ledger = ledger;
  result.schedule.converged = converged;
  result.schedule.stop_reason = reason;
  result.schedule.diagnostic = std::move(diagnostic);
}

// Heaviest term; ties go to the lexicographically smallest string, which is
// the first one encountered since terms are sorted.
const PauliTerm& heaviest(const PauliChannel& ch) {
  const PauliTerm* best = &ch.terms().front();
  for (const auto& t : ch.terms()) {
    if (t.weight > best->weight) best = &t;
  }
  return *best;
}

}  // namespace

std::string render(StopReason r) {
  switch (r) {
    case StopReason::kAllWithinTol: return "all_within_tol";
    case StopReason::kMaxIters: return "max_iters";
    case StopReason::kStalled: return "stalled";
  }
  return "unknown";
}

ResidueLedger ResidueLedger::from_channel(const PauliChannel& system) {
  ResidueLedger ledger;
  for (const auto& t : system.terms()) ledger.entries[t.pauli] = t.weight;
  return ledger;
}

double ResidueLedger::residue(const PauliString& p) const {
  auto it = entries.find(p);
  return it == entries.end() ? 0.0 : it->second;
}

double ResidueLedger::conservation_error() const {
  double total = encoded_mass;
  for (const auto& [p, r] : entries) total += r;
  return std::abs(total - 1.0);
}

double ResidueLedger::max_abs_target_residue() const {
  double worst = 0.0;
  for (const auto& [p, r] : entries) {
    if (!p.is_identity()) worst = std::max(worst, std::abs(r));
  }
  return worst;
}

std::vector<PauliString> ConvergenceTrace::tracked_strings() const {
  std::set<PauliString> all;
  for (const auto& s : snapshots) {
    for (const auto& [p, r] : s.residues) all.insert(p);
  }
  return {all.begin(), all.end()};
}

std::vector<Branch> expand_node(const PauliString& node, double node_mass,
                                const PauliChannel& noise) {
  if (node.n_qubits() != noise.n_qubits()) {
    throw DimensionError("expand_node: node on " + std::to_string(node.n_qubits()) +
                         " qubits, noise on " + std::to_string(noise.n_qubits()));
  }
  if (!(node_mass > 0.0) || node_mass > 1.0 + 1e-12) {
    throw std::invalid_argument("expand_node: node mass must lie in (0, 1], got " +
                                std::to_string(node_mass));
  }
  std::vector<Branch> out;
  out.reserve(noise.terms().size());
  for (const auto& t : noise.terms()) {
    if (t.weight == 0.0) continue;
    out.push_back({node_mass * t.weight, multiply(t.pauli, node).string});
  }
  return out;
}

EncodingResult encode_fixed(const PauliChannel& system, const PauliChannel& noise,
                            const PauliString& node, std::size_t max_iters, double tol) {
  require_same_register(system, noise);
  if (node.n_qubits() != system.n_qubits()) throw DimensionError("encode_fixed: node register mismatch");
  if (max_iters == 0) throw std::invalid_argument("encode_fixed: max_iters must be at least 1");
  if (!(tol >= 0.0)) throw std::invalid_argument("encode_fixed: tol must be non-negative");

  EncodingResult result;
  result.schedule.n_qubits = system.n_qubits();
  ResidueLedger ledger = ResidueLedger::from_channel(system);
  result.trace.snapshots.push_back(snapshot(0, ledger));

  std::vector<PauliString> targets;
  for (const auto& b : expand_node(node, 1.0, noise)) {
    if (!b.pauli.is_identity()) targets.push_back(b.pauli);
  }

  for (std::size_t it = 0; it < max_iters; ++it) {
    if (all_targets_within(ledger, tol)) {
      finish(result, ledger, true, StopReason::kAllWithinTol);
      return result;
    }
    double reachable = 0.0;
    bool worth_encoding = false;
    for (const auto& t : targets) {
      const double r = ledger.residue(t);
      if (r > 0.0) reachable += r;
      if (r > tol) worth_encoding = true;
    }
    const double mass = std::min(reachable, 1.0 - ledger.encoded_mass);
    if (!worth_encoding || !(mass > 0.0)) {
      finish(result, ledger, false, StopReason::kStalled,
             it == 0 ? "node " + render(node) + " reaches no positive residue above tolerance"
                     : "no residue reachable from node " + render(node) + " exceeds tolerance");
      return result;
    }
    apply_step(result, ledger, node, mass, noise);
  }
  const bool ok = all_targets_within(ledger, tol);
  finish(result, ledger, ok, ok ? StopReason::kAllWithinTol : StopReason::kMaxIters);
  return result;
}

EncodingResult encode_adaptive(const PauliChannel& system, const PauliChannel& noise, double tol,
                               std::size_t max_iters) {
  require_same_register(system, noise);
  if (!(tol > 0.0)) throw std::invalid_argument("encode_adaptive: tol must be positive");
  if (max_iters == 0) throw std::invalid_argument("encode_adaptive: max_iters must be at least 1");

  EncodingResult result;
  result.schedule.n_qubits = system.n_qubits();
  ResidueLedger ledger = ResidueLedger::from_channel(system);
  result.trace.snapshots.push_back(snapshot(0, ledger));

  const PauliTerm& noise_top = heaviest(noise);

  for (std::size_t it = 0; it < max_iters; ++it) {
    // Largest positive target residue; map order makes ties lexicographic.
    const PauliString* top = nullptr;
    double top_residue = tol;
    for (const auto& [p, r] : ledger.entries) {
      if (!p.is_identity() && r > top_residue) {
        top = &p;
        top_residue = r;
      }
    }
    if (top == nullptr) {
      const bool ok = all_targets_within(ledger, tol);
      finish(result, ledger, ok, ok ? StopReason::kAllWithinTol : StopReason::kStalled,
             ok ? std::string{} : "remaining residues are over-encoded below -tol");
      return result;
    }
    const PauliString node = multiply(noise_top.pauli, *top).string;
    const double mass = std::min(top_residue / noise_top.weight, 1.0 - ledger.encoded_mass);
    if (!(mass > 0.0)) {
      finish(result, ledger, false, StopReason::kStalled, "no unencoded mass left");
      return result;
    }
    apply_step(result, ledger, node, mass, noise);
  }
  const bool ok = all_targets_within(ledger, tol);
  finish(result, ledger, ok, ok ? StopReason::kAllWithinTol : StopReason::kMaxIters);
  return result;
}

EffectiveChannel effective_channel(const EncodingSchedule& schedule) {
  if (schedule.n_qubits == 0) throw DimensionError("effective_channel: schedule has no register");
  // Sorting contributions before summing makes the result independent of
  // step order down to the last bit.
  std::map<PauliString, std::vector<double>> contributions;
  std::vector<double> all;
  for (const auto& step : schedule.steps) {
    for (const auto& b : step.branches) {
      contributions[b.pauli].push_back(b.mass);
      all.push_back(b.mass);
    }
  }
  auto sorted_sum = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  };
  const double encoded = sorted_sum(all);
  if (encoded > 1.0 + 1e-9) {
    throw EncodingError("schedule encodes " + std::to_string(encoded) + " > 1 total mass",
                        encoded - 1.0);
  }
  const double remainder = std::max(0.0, 1.0 - encoded);
  std::vector<PauliTerm> terms;
  for (auto& [p, masses] : contributions) terms.push_back({sorted_sum(masses), p});
  terms.push_back({remainder, PauliString::identity(schedule.n_qubits)});
  // Rounding in the per-string sums can leave the total a few ulps off.
  double total = 0.0;
  for (const auto& t : terms) total += t.weight;
  if (std::abs(total - 1.0) > tolerance::kWeightSum) {
    throw InvariantError("effective channel mass " + std::to_string(total) + " != 1");
  }
  return {PauliChannel(schedule.n_qubits, std::move(terms)), encoded, remainder};
}

std::vector<OverEncodedString> overencoding_report(const ConvergenceTrace& trace, double tol) {
  if (trace.snapshots.empty()) throw std::invalid_argument("overencoding_report: empty trace");
  std::vector<OverEncodedString> out;
  for (const auto& p : trace.tracked_strings()) {
    OverEncodedString rec{p, 0.0, 0, 0.0};
    bool crossed = false;
    double min_r = std::numeric_limits<double>::infinity();
    for (const auto& s : trace.snapshots) {
      auto it = s.residues.find(p);
      const double r = it == s.residues.end() ? 0.0 : it->second;
      min_r = std::min(min_r, r);
      if (!crossed && r < -tol) {
        crossed = true;
        rec.first_crossing = s.iteration;
      }
    }
    if (!crossed) continue;
    rec.min_residue = min_r;
    auto it = trace.snapshots.back().residues.find(p);
    rec.final_residue = it == trace.snapshots.back().residues.end() ? 0.0 : it->second;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace noisesim
