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

#include "noisesim/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "noisesim/clusters.hpp"

namespace noisesim {

namespace {

constexpr std::size_t kMaxSites = 10;

inline bool excited(std::size_t index, std::size_t n, std::size_t site) {
  return (index >> (n - 1 - site)) & 1u;
}

inline std::size_t site_bit(std::size_t n, std::size_t site) { return std::size_t{1} << (n - 1 - site); }

void add_bond(Matrix& h, std::size_t n, std::size_t site, double g) {
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t a = site_bit(n, site), b = site_bit(n, site + 1);
  for (std::size_t s = 0; s < dim; ++s) {
    // s+_i s-_{i+1} + h.c. swaps a single excitation across the bond.
    const bool ei = s & a, ej = s & b;
    if (ei != ej) h(s ^ a ^ b, s) += g;
  }
}

Matrix step_unitary(const ExcitonChainSpec& spec) {
  const auto factors = trotter_step_unitaries(spec);
  Matrix u = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) u = factors[k] * u;
  return u;
}

DensityMatrix coherent_step(const Matrix& u, const DensityMatrix& rho) {
  Matrix out = u * rho.matrix() * u.adjoint();
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix(std::move(out), Validation::kNone);
}

void record(Trajectory& t, double time, const DensityMatrix& rho, bool store) {
  t.times.push_back(time);
  t.populations.push_back(site_populations(rho));
  if (store) t.states.push_back(rho);
}

PauliString default_node(const PauliChannel& system) {
  const PauliTerm* best = nullptr;
  for (const auto& t : system.terms()) {
    if (t.pauli.is_identity()) continue;
    if (best == nullptr || t.weight > best->weight) best = &t;
  }
  if (best == nullptr) return PauliString::identity(system.n_qubits());
  return best->pauli;
}

}  // namespace

std::string render(TrotterOrder t) {
  return t == TrotterOrder::kExactExponential ? "exact" : "first_order";
}

std::string render(EncoderMode m) { return m == EncoderMode::kFixed ? "fixed" : "adaptive"; }

void ExcitonChainSpec::validate() const {
  if (n_sites < 2 || n_sites > kMaxSites) {
    throw std::invalid_argument("exciton chain needs 2..10 sites, got " + std::to_string(n_sites));
  }
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (system_channel.n_qubits() != n_sites) {
    throw DimensionError("system channel acts on " + std::to_string(system_channel.n_qubits()) +
                         " qubits, chain has " + std::to_string(n_sites) + " sites");
  }
  (void)initial_density();
}

DensityMatrix ExcitonChainSpec::initial_density() const {
  const std::size_t dim = std::size_t{1} << n_sites;
  if (const auto* label = std::get_if<std::string>(&initial_state)) {
    if (label->size() != n_sites) {
      throw std::invalid_argument("initial state label '" + *label + "' does not have " +
                                  std::to_string(n_sites) + " sites");
    }
    std::size_t index = 0;
    for (std::size_t i = 0; i < n_sites; ++i) {
      const char c = (*label)[i];
      if (c != '0' && c != '1') {
        throw std::invalid_argument("initial state label must contain only 0/1, got '" + *label + "'");
      }
      if (c == '1') index |= site_bit(n_sites, i);
    }
    return DensityMatrix::basis_state(dim, index);
  }
  const auto& rho = std::get<DensityMatrix>(initial_state);
  if (rho.dim() != dim) throw DimensionError("initial state dimension does not match the chain");
  rho.validate(Validation::kFull);
  return rho;
}

Matrix onsite_hamiltonian(const ExcitonChainSpec& spec) {
  const std::size_t n = spec.n_sites;
  const std::size_t dim = std::size_t{1} << n;
  Matrix h = Matrix::Zero(dim, dim);
  for (std::size_t s = 0; s < dim; ++s) {
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) z += excited(s, n, i) ? -1.0 : 1.0;
    h(s, s) = 0.5 * spec.omega0 * z;
  }
  return h;
}

Matrix bond_hamiltonian(const ExcitonChainSpec& spec, bool odd_bonds) {
  const std::size_t n = spec.n_sites;
  const std::size_t dim = std::size_t{1} << n;
  Matrix h = Matrix::Zero(dim, dim);
  // Bond k couples sites k and k+1 (0-based); "odd" bonds are (1,2), (3,4), ...
  for (std::size_t k = odd_bonds ? 0 : 1; k + 1 < n; k += 2) add_bond(h, n, k, spec.g);
  return h;
}

Matrix build_hamiltonian(const ExcitonChainSpec& spec) {
  if (spec.n_sites < 2 || spec.n_sites > kMaxSites) {
    throw std::invalid_argument("exciton chain needs 2..10 sites");
  }
  return onsite_hamiltonian(spec) + bond_hamiltonian(spec, true) + bond_hamiltonian(spec, false);
}

Matrix excitation_number(std::size_t n_sites) {
  const std::size_t dim = std::size_t{1} << n_sites;
  Matrix m = Matrix::Zero(dim, dim);
  for (std::size_t s = 0; s < dim; ++s) {
    for (std::size_t i = 0; i < n_sites; ++i) m(s, s) += excited(s, n_sites, i) ? 1.0 : 0.0;
  }
  return m;
}

Matrix unitary_exponential(const Matrix& hermitian, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (hermitian + hermitian.adjoint()));
  const Eigen::VectorXd& ev = es.eigenvalues();
  Vector phases(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) phases(k) = std::polar(1.0, -ev(k) * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

std::vector<Matrix> trotter_step_unitaries(const ExcitonChainSpec& spec) {
  if (spec.trotter_order == TrotterOrder::kExactExponential) {
    return {unitary_exponential(build_hamiltonian(spec), spec.dt)};
  }
  return {unitary_exponential(onsite_hamiltonian(spec), spec.dt),
          unitary_exponential(bond_hamiltonian(spec, true), spec.dt),
          unitary_exponential(bond_hamiltonian(spec, false), spec.dt)};
}

std::vector<double> site_populations(const DensityMatrix& rho) {
  const std::size_t n = rho.n_qubits();
  std::vector<double> pops(n, 0.0);
  for (std::size_t s = 0; s < rho.dim(); ++s) {
    const double p = rho.matrix()(s, s).real();
    for (std::size_t i = 0; i < n; ++i) {
      if (excited(s, n, i)) pops[i] += p;
    }
  }
  return pops;
}

Trajectory evolve_reference(const ExcitonChainSpec& spec, const EvolveOptions& options) {
  spec.validate();
  const Matrix u = step_unitary(spec);
  DensityMatrix rho = spec.initial_density();
  Trajectory t;
  record(t, 0.0, rho, options.store_states);
  for (std::size_t s = 1; s <= spec.n_steps; ++s) {
    rho = apply_pauli_channel(spec.system_channel, coherent_step(u, rho));
    record(t, double(s) * spec.dt, rho, options.store_states);
  }
  return t;
}

NoiseAssistedRun evolve_noise_assisted(const ExcitonChainSpec& spec, const PauliChannel& noise_in,
                                       const NoiseAssistedOptions& options) {
  spec.validate();
  PauliChannel noise = noise_in;
  if (noise.n_qubits() == 2 && spec.n_sites > 2) noise = lift_noise_nn(noise_in, spec.n_sites);
  if (noise.n_qubits() != spec.n_sites) {
    throw DimensionError("noise acts on " + std::to_string(noise.n_qubits()) +
                         " qubits, chain has " + std::to_string(spec.n_sites) + " sites");
  }
  const PauliString node = options.node.value_or(default_node(spec.system_channel));
  const Matrix u = step_unitary(spec);

  NoiseAssistedRun run;
  run.schedules.reserve(spec.n_steps);
  DensityMatrix rho = spec.initial_density();
  record(run.trajectory, 0.0, rho, options.store_states);
  for (std::size_t s = 1; s <= spec.n_steps; ++s) {
    EncodingResult enc =
        options.mode == EncoderMode::kFixed
            ? encode_fixed(spec.system_channel, noise, node, options.max_iters, options.tol)
            : encode_adaptive(spec.system_channel, noise, options.tol, options.max_iters);
    if (!enc.schedule.converged) {
      throw NonConvergenceError("encoder did not converge at step " + std::to_string(s) + " (" +
                                    render(enc.schedule.stop_reason) + ", max |residue| " +
                                    std::to_string(enc.schedule.final_ledger.max_abs_target_residue()) +
                                    ")",
                                s);
    }
    run.effective = effective_channel(enc.schedule).channel;
    rho = apply_pauli_channel(run.effective, coherent_step(u, rho));
    record(run.trajectory, double(s) * spec.dt, rho, options.store_states);
    run.schedules.push_back(std::move(enc.schedule));
  }
  return run;
}

PauliChannel multi_exciton_channel(double w1, double w2, double w3, double w4) {
  for (double w : {w1, w2, w3, w4}) {
    if (!(w >= 0.0)) throw std::invalid_argument("multi_exciton_channel: weights must be >= 0");
  }
  const double total = w1 + w2 + w3 + w4;
  if (total > 1.0 + tolerance::kWeightSum) {
    throw std::invalid_argument("multi_exciton_channel: weights sum above 1");
  }
  return PauliChannel(4, {{w1, parse_pauli("XZXZ")},
                          {w2, parse_pauli("IYIY")},
                          {w3, parse_pauli("IYXZ")},
                          {w4, parse_pauli("XZIY")},
                          {std::max(0.0, 1.0 - total), PauliString::identity(4)}});
}

PauliChannel pair_channel(double w_xz, double w_iy) {
  if (!(w_xz >= 0.0) || !(w_iy >= 0.0) || w_xz + w_iy > 1.0 + tolerance::kWeightSum) {
    throw std::invalid_argument("pair_channel: weights must be >= 0 with sum <= 1");
  }
  return PauliChannel(2, {{w_xz, parse_pauli("XZ")},
                          {w_iy, parse_pauli("IY")},
                          {std::max(0.0, 1.0 - w_xz - w_iy), PauliString::identity(2)}});
}

PauliChannel bit_flip_pair_noise(double w_xx) {
  if (!(w_xx >= 0.0) || w_xx > 1.0) throw std::invalid_argument("bit-flip weight must lie in [0, 1]");
  return PauliChannel(2, {{w_xx, parse_pauli("XX")}, {1.0 - w_xx, PauliString::identity(2)}});
}

LindbladSpec exciton_chain_lindblad(const ExcitonChainSpec& spec, double gamma) {
  LindbladSpec out = dephasing_z_preset(spec.n_sites, gamma);
  out.hamiltonian = build_hamiltonian(spec);
  return out;
}

double max_population_gap(const Trajectory& a, const Trajectory& b) {
  if (a.populations.size() != b.populations.size()) {
    throw DimensionError("trajectories have different lengths");
  }
  double gap = 0.0;
  for (std::size_t s = 0; s < a.populations.size(); ++s) {
    for (std::size_t i = 0; i < a.populations[s].size(); ++i) {
      gap = std::max(gap, std::abs(a.populations[s][i] - b.populations[s][i]));
    }
  }
  return gap;
}

}  // namespace noisesim
