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

#include "noisesim/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "noisesim/channels.hpp"
#include "noisesim/choi.hpp"
#include "noisesim/clusters.hpp"
#include "noisesim/dynamics.hpp"
#include "noisesim/encoder.hpp"
#include "noisesim/pauli.hpp"
#include "noisesim/random.hpp"

namespace noisesim {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

Outcome within(double worst, double limit) { return {worst <= limit, "worst " + sci(worst)}; }

Rng rng_for(std::uint64_t seed, std::uint64_t check) { return Rng(derive_seed(seed, check)); }

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// --- pauli --------------------------------------------------------------

Outcome pauli_product_matches_matrices(std::uint64_t seed) {
  Rng rng = rng_for(seed, 1);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = uniform(rng, 1, 3);
    const PauliString a = random_pauli_string(n, rng), b = random_pauli_string(n, rng);
    const Matrix diff = to_matrix(multiply(a, b)) - to_matrix(a) * to_matrix(b);
    worst = std::max(worst, diff.cwiseAbs().maxCoeff());
  }
  return within(worst, 1e-12);
}

Outcome pauli_text_round_trip(std::uint64_t seed) {
  Rng rng = rng_for(seed, 2);
  for (int t = 0; t < 200; ++t) {
    const PauliString p = random_pauli_string(uniform(rng, 1, 70), rng);
    if (parse_pauli(render(p)) != p) return {false, "round trip failed for " + render(p)};
  }
  return {true, "200 strings"};
}

Outcome pauli_squares_to_identity(std::uint64_t seed) {
  Rng rng = rng_for(seed, 3);
  for (int t = 0; t < 200; ++t) {
    const PauliString p = random_pauli_string(uniform(rng, 1, 8), rng);
    const PhasedPauli sq = multiply(p, p);
    if (!sq.string.is_identity() || sq.phase != Phase::kPlusOne) {
      return {false, render(p) + " squared is not +I"};
    }
  }
  return {true, "200 strings"};
}

// --- channels -----------------------------------------------------------

Outcome channel_output_is_state(std::uint64_t seed) {
  Rng rng = rng_for(seed, 10);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = uniform(rng, 1, 3);
    const PauliChannel ch = random_pauli_channel(n, rng);
    const DensityMatrix rho = random_density_matrix(std::size_t{1} << n, rng);
    const DensityMatrix out = apply_pauli_channel(ch, rho);
    worst = std::max(worst, std::abs(out.matrix().trace() - 1.0));
    worst = std::max(worst, (out.matrix() - out.matrix().adjoint()).cwiseAbs().maxCoeff());
    worst = std::max(worst, -std::min(0.0, out.min_eigenvalue()));
  }
  return within(worst, 1e-9);
}

Outcome twirl_recovers_pauli_weights(std::uint64_t seed) {
  Rng rng = rng_for(seed, 11);
  double worst = 0.0;
  for (int t = 0; t < 30; ++t) {
    const PauliChannel ch = random_pauli_channel(uniform(rng, 1, 2), rng);
    worst = std::max(worst, weight_l1_distance(twirl(as_kraus(ch)), ch));
  }
  return within(worst, 1e-10);
}

Outcome compose_matches_sequential(std::uint64_t seed) {
  Rng rng = rng_for(seed, 12);
  double worst = 0.0;
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = uniform(rng, 1, 2);
    const PauliChannel a = random_pauli_channel(n, rng), b = random_pauli_channel(n, rng);
    const DensityMatrix rho = random_density_matrix(std::size_t{1} << n, rng);
    const Matrix seq = apply_pauli_channel(b, apply_pauli_channel(a, rho)).matrix();
    const Matrix comp = apply_pauli_channel(compose(a, b), rho).matrix();
    worst = std::max(worst, (seq - comp).cwiseAbs().maxCoeff());
  }
  return within(worst, 1e-12);
}

Outcome lindblad_preserves_trace_and_hermiticity(std::uint64_t seed) {
  Rng rng = rng_for(seed, 13);
  ExcitonChainSpec chain;
  const LindbladSpec spec = exciton_chain_lindblad(chain, 0.1);
  const DensityMatrix rho0 = random_density_matrix(4, rng);
  const auto states = evolve_lindblad_rk4(rho0, spec, 0.01, 200);
  double worst = 0.0;
  for (const auto& s : states) {
    worst = std::max(worst, std::abs(s.matrix().trace() - 1.0));
    worst = std::max(worst, -std::min(0.0, s.min_eigenvalue()));
  }
  return within(worst, 1e-9);
}

Outcome kraus_completeness_is_second_order(std::uint64_t) {
  const LindbladSpec spec = exciton_chain_lindblad(ExcitonChainSpec{}, 0.2);
  const double d1 = lindblad_to_kraus(spec, 1e-3).completeness_defect;
  const double d2 = lindblad_to_kraus(spec, 5e-4).completeness_defect;
  const double ratio = d1 / d2;
  return {ratio > 3.5 && ratio < 4.5, "defect ratio " + sci(ratio)};
}

// --- encoder ------------------------------------------------------------

Outcome encoder_conserves_mass(std::uint64_t seed) {
  Rng rng = rng_for(seed, 20);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = uniform(rng, 1, 2);
    const PauliChannel sys = random_pauli_channel(n, rng), noise = random_pauli_channel(n, rng);
    const EncodingResult r =
        t % 2 == 0 ? encode_fixed(sys, noise, random_pauli_string(n, rng), 50, 1e-6)
                   : encode_adaptive(sys, noise, 1e-3, 50);
    for (const auto& snap : r.trace.snapshots) {
      double total = snap.encoded_mass;
      for (const auto& [p, v] : snap.residues) total += v;
      worst = std::max(worst, std::abs(total - 1.0));
    }
  }
  return within(worst, kConservationTolerance);
}

Outcome encoder_never_encodes_negative_mass(std::uint64_t seed) {
  Rng rng = rng_for(seed, 21);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = uniform(rng, 1, 2);
    const PauliChannel sys = random_pauli_channel(n, rng), noise = random_pauli_channel(n, rng);
    const EncodingResult r = encode_adaptive(sys, noise, 1e-3, 50);
    for (const auto& s : r.schedule.steps) {
      if (!(s.node_mass > 0.0)) return {false, "non-positive node mass at step " + std::to_string(s.iteration)};
    }
    if (r.schedule.final_ledger.encoded_mass > 1.0 + 1e-12) return {false, "encoded mass above 1"};
  }
  return {true, "100 runs"};
}

Outcome effective_channel_is_order_independent(std::uint64_t seed) {
  Rng rng = rng_for(seed, 22);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = uniform(rng, 1, 2);
    const PauliChannel sys = random_pauli_channel(n, rng), noise = random_pauli_channel(n, rng);
    EncodingSchedule s = encode_adaptive(sys, noise, 1e-3, 50).schedule;
    const PauliChannel forward = effective_channel(s).channel;
    std::reverse(s.steps.begin(), s.steps.end());
    if (!(effective_channel(s).channel == forward)) return {false, "step order changed the channel"};
  }
  return {true, "50 schedules"};
}

Outcome encoder_stays_in_cluster(std::uint64_t) {
  const PauliChannel sys = pair_channel(0.6, 0.4);
  for (double w = 0.1; w < 0.95; w += 0.1) {
    const EncodingResult r = encode_fixed(sys, bit_flip_pair_noise(w), parse_pauli("XZ"), 200, 1e-9);
    for (const auto& snap : r.trace.snapshots) {
      for (const auto& [p, v] : snap.residues) {
        const std::string s = render(p);
        if (s != "XZ" && s != "IY" && !p.is_identity() && v != 0.0) {
          return {false, s + " acquired residue " + sci(v)};
        }
      }
    }
  }
  return {true, "w_XX 0.1..0.9"};
}

// --- clusters -----------------------------------------------------------

Outcome orbit_is_closed_and_node_invariant(std::uint64_t seed) {
  Rng rng = rng_for(seed, 30);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = uniform(rng, 1, 3);
    PauliSet noise;
    const std::size_t m = uniform(rng, 1, 3);
    for (std::size_t k = 0; k < m; ++k) noise.insert(random_pauli_string(n, rng));
    const PauliString node = random_pauli_string(n, rng);
    const ClusterReport r = classify(node, noise);
    for (const auto& member : r.members) {
      for (const auto& q : r.noise_support) {
        if (!r.members.count(multiply(q, member).string)) return {false, "orbit not closed"};
      }
    }
    if (!node_invariance_check(r.members, r.noise_support)) return {false, "orbit depends on node"};
    if (r.cluster_dimension < r.braid_dimension + 1) return {false, "d_c < d_b + 1"};
  }
  return {true, "50 clusters"};
}

Outcome lift_weights_multiply(std::uint64_t seed) {
  Rng rng = rng_for(seed, 31);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const PauliChannel base = random_pauli_channel(2, uniform(rng, 1, 4), rng);
    const PauliChannel lifted = lift_noise_nn(base, 4);
    for (const auto& a : base.terms()) {
      for (const auto& b : base.terms()) {
        const double got = lifted.weight_of(tensor(a.pauli, b.pauli));
        worst = std::max(worst, std::abs(got - a.weight * b.weight));
      }
    }
  }
  return within(worst, 1e-14);
}

// --- choi ---------------------------------------------------------------

Outcome choi_duality_and_bounds(std::uint64_t seed) {
  Rng rng = rng_for(seed, 40);
  const double orders[] = {1.0, 1.5, 2.0, 3.0, kInfinity};
  double worst_duality = 0.0;
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = uniform(rng, 1, 2);
    const PauliChannel sys = random_pauli_channel(n, rng), eff = random_pauli_channel(n, rng);
    const DensityMatrix rho = random_density_matrix(std::size_t{1} << n, rng);
    const double p = orders[t % 5];
    const BoundReport r = choi_bound_check(sys, eff, rho, p);
    worst_duality = std::max(worst_duality, r.duality_error);
    if (!r.all_hold()) return {false, "bound chain violated at trial " + std::to_string(t)};
  }
  return within(worst_duality, 1e-9);
}

Outcome schatten_norms_are_ordered(std::uint64_t seed) {
  Rng rng = rng_for(seed, 41);
  for (int t = 0; t < 50; ++t) {
    const Matrix m = random_density_matrix(4, rng).matrix() - random_density_matrix(4, rng).matrix();
    const double n1 = schatten_norm(m, 1.0), n2 = schatten_norm(m, 2.0), ninf = schatten_norm(m, kInfinity);
    if (n1 < n2 * (1 - 1e-12) || n2 < ninf * (1 - 1e-12)) return {false, "norm order violated"};
  }
  return {true, "50 matrices"};
}

Outcome pauli_choi_spectrum_is_weights(std::uint64_t seed) {
  Rng rng = rng_for(seed, 42);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const PauliChannel ch = random_pauli_channel(uniform(rng, 1, 2), rng);
    Eigen::SelfAdjointEigenSolver<Matrix> es(choi_of(ch).matrix(), Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::vector<double> w;
    for (const auto& term : ch.terms()) w.push_back(term.weight);
    w.resize(ev.size(), 0.0);
    std::sort(ev.begin(), ev.end());
    std::sort(w.begin(), w.end());
    for (std::size_t i = 0; i < ev.size(); ++i) worst = std::max(worst, std::abs(ev[i] - w[i]));
  }
  return within(worst, 1e-12);
}

// --- dynamics -----------------------------------------------------------

Outcome hamiltonian_conserves_excitations(std::uint64_t seed) {
  Rng rng = rng_for(seed, 50);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    ExcitonChainSpec spec;
    spec.n_sites = uniform(rng, 2, 6);
    spec.omega0 = u(rng);
    spec.g = u(rng);
    const Matrix h = build_hamiltonian(spec);
    const Matrix num = excitation_number(spec.n_sites);
    worst = std::max(worst, (h * num - num * h).cwiseAbs().maxCoeff());
    worst = std::max(worst, (h - h.adjoint()).cwiseAbs().maxCoeff());
  }
  return within(worst, 1e-12);
}

Outcome trotter_step_is_unitary(std::uint64_t) {
  double worst = 0.0;
  for (std::size_t n = 2; n <= 6; ++n) {
    ExcitonChainSpec spec;
    spec.n_sites = n;
    for (auto order : {TrotterOrder::kExactExponential, TrotterOrder::kFirstOrder}) {
      spec.trotter_order = order;
      Matrix u = Matrix::Identity(std::size_t{1} << n, std::size_t{1} << n);
      for (const auto& f : trotter_step_unitaries(spec)) u = f * u;
      worst = std::max(worst, (u * u.adjoint() - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff());
    }
  }
  return within(worst, 1e-10);
}

Outcome coherent_evolution_conserves_excitations(std::uint64_t) {
  ExcitonChainSpec spec;
  spec.n_sites = 4;
  spec.system_channel = PauliChannel::identity(4);
  spec.initial_state = std::string("1100");
  spec.trotter_order = TrotterOrder::kFirstOrder;
  const Trajectory t = evolve_reference(spec);
  double worst = 0.0;
  for (const auto& pops : t.populations) {
    double total = 0.0;
    for (double p : pops) total += p;
    worst = std::max(worst, std::abs(total - 2.0));
  }
  return within(worst, 1e-9);
}

Outcome trajectories_stay_physical(std::uint64_t) {
  ExcitonChainSpec spec;
  spec.system_channel = pair_channel(chain_defaults::kWeightXZ, chain_defaults::kWeightIY);
  const Trajectory t = evolve_reference(spec, {true});
  double worst = 0.0;
  for (std::size_t s = 0; s < t.states.size(); ++s) {
    worst = std::max(worst, -std::min(0.0, t.states[s].min_eigenvalue()));
    for (double p : t.populations[s]) worst = std::max({worst, -p, p - 1.0});
  }
  return within(worst, 1e-9);
}

Outcome noise_assisted_tracks_reference(std::uint64_t) {
  ExcitonChainSpec spec;
  spec.system_channel = pair_channel(chain_defaults::kWeightXZ, chain_defaults::kWeightIY);
  const Trajectory ref = evolve_reference(spec);
  NoiseAssistedOptions opt;
  opt.tol = 1e-6;
  const NoiseAssistedRun na = evolve_noise_assisted(spec, bit_flip_pair_noise(chain_defaults::kNoiseXX), opt);
  return within(max_population_gap(ref, na.trajectory), 1e-5);
}

}  // namespace

std::vector<CheckResult> run_validation(std::uint64_t seed) {
  struct Check {
    const char* module;
    const char* name;
    std::function<Outcome(std::uint64_t)> run;
  };
  const std::vector<Check> checks = {
      {"pauli", "product matches dense matrices", pauli_product_matches_matrices},
      {"pauli", "text round trip", pauli_text_round_trip},
      {"pauli", "P*P = +I", pauli_squares_to_identity},
      {"channels", "output is a density matrix", channel_output_is_state},
      {"channels", "twirl of Kraus form recovers weights", twirl_recovers_pauli_weights},
      {"channels", "compose matches sequential application", compose_matches_sequential},
      {"channels", "RK4 keeps trace and positivity", lindblad_preserves_trace_and_hermiticity},
      {"channels", "Kraus completeness defect is O(dt^2)", kraus_completeness_is_second_order},
      {"encoder", "residue conservation", encoder_conserves_mass},
      {"encoder", "no negative node mass", encoder_never_encodes_negative_mass},
      {"encoder", "effective channel independent of step order", effective_channel_is_order_independent},
      {"encoder", "residues confined to the node cluster", encoder_stays_in_cluster},
      {"clusters", "orbit closed and node invariant", orbit_is_closed_and_node_invariant},
      {"clusters", "lifted weights multiply across pairs", lift_weights_multiply},
      {"choi", "duality and bound chain", choi_duality_and_bounds},
      {"choi", "Schatten norms ordered in p", schatten_norms_are_ordered},
      {"choi", "Pauli Choi spectrum equals weights", pauli_choi_spectrum_is_weights},
      {"dynamics", "H Hermitian and excitation conserving", hamiltonian_conserves_excitations},
      {"dynamics", "step unitaries are unitary", trotter_step_is_unitary},
      {"dynamics", "coherent step conserves excitations", coherent_evolution_conserves_excitations},
      {"dynamics", "trajectory states physical", trajectories_stay_physical},
      {"dynamics", "noise-assisted matches reference", noise_assisted_tracks_reference},
  };
  std::vector<CheckResult> out;
  out.reserve(checks.size());
  for (const auto& c : checks) {
    CheckResult r{c.module, c.name, false, {}};
    try {
      const Outcome o = c.run(seed);
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace noisesim
