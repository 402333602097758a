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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "noisesim/channels.hpp"
#include "noisesim/encoder.hpp"

namespace noisesim {

enum class TrotterOrder { kExactExponential, kFirstOrder };
enum class EncoderMode { kFixed, kAdaptive };

std::string render(TrotterOrder t);
std::string render(EncoderMode m);

/// Defaults are implementation choices picked so dissipation is visible over
/// roughly ten coherent oscillations; they are not taken from any data set.
namespace chain_defaults {
inline constexpr double kOmega0 = 1.0;
inline constexpr double kHopping = 0.5;
inline constexpr double kDt = 0.05;
inline constexpr std::size_t kSteps = 200;
inline constexpr double kWeightXZ = 0.03;
inline constexpr double kWeightIY = 0.02;
/// Bit-flip noise weight. 0.4 puts the default {XZ, IY} target on the
/// single-node encodable ray (0.03 : 0.02 == 0.6 : 0.4).
inline constexpr double kNoiseXX = 0.4;
}  // namespace chain_defaults

/// Nearest-neighbor exciton chain driven by a per-step Pauli channel.
/// Site i is qubit i; |1> is the excited state and sigma^+|0> = |1>.
struct ExcitonChainSpec {
  std::size_t n_sites = 2;
  double omega0 = chain_defaults::kOmega0;
  double g = chain_defaults::kHopping;
  double dt = chain_defaults::kDt;
  std::size_t n_steps = chain_defaults::kSteps;
  PauliChannel system_channel = PauliChannel::identity(2);
  /// Bit label such as "10" (site 1 excited) or an explicit state.
  std::variant<std::string, DensityMatrix> initial_state = std::string("10");
  TrotterOrder trotter_order = TrotterOrder::kExactExponential;

  /// Throws std::invalid_argument / DimensionError on bad configuration.
  void validate() const;
  DensityMatrix initial_density() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;  // empty unless requested
  std::vector<std::vector<double>> populations;  // [step][site]
};

/// H = (w0/2) sum_i Z_i + g sum_i (s+_i s-_{i+1} + s-_i s+_{i+1}), open chain.
Matrix build_hamiltonian(const ExcitonChainSpec& spec);
/// On-site part and the odd/even bond groups; odd = bonds (1,2), (3,4), ...
Matrix onsite_hamiltonian(const ExcitonChainSpec& spec);
Matrix bond_hamiltonian(const ExcitonChainSpec& spec, bool odd_bonds);
/// sum_i n_i
Matrix excitation_number(std::size_t n_sites);

/// exp(-i H t) for Hermitian H via spectral decomposition.
Matrix unitary_exponential(const Matrix& hermitian, double t);

/// Unitaries for one time step, in application order. Exact mode returns a
/// single exp(-iH dt); first order returns on-site, odd-bond, even-bond
/// factors.
std::vector<Matrix> trotter_step_unitaries(const ExcitonChainSpec& spec);

/// n_i = Tr[rho Pi_i] with Pi_i the |1> projector on site i.
std::vector<double> site_populations(const DensityMatrix& rho);

struct EvolveOptions {
  bool store_states = false;
};

/// Coherent step followed by the exact system channel, every dt.
Trajectory evolve_reference(const ExcitonChainSpec& spec, const EvolveOptions& options = {});

struct NoiseAssistedOptions {
  EncoderMode mode = EncoderMode::kAdaptive;
  double tol = 1e-6;
  std::size_t max_iters = 10000;
  /// Fixed mode node; defaults to the heaviest non-identity system string.
  std::optional<PauliString> node;
  bool store_states = false;
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

struct NoiseAssistedRun {
  Trajectory trajectory;
  std::vector<EncodingSchedule> schedules;  // one per time step
  PauliChannel effective = PauliChannel::identity(1);
};

/// Same coherent step as the reference, then the effective channel the
/// encoder builds from `noise` for the system channel. A two-qubit noise
/// channel on a longer chain is lifted to disjoint nearest-neighbor pairs.
/// Throws NonConvergenceError naming the step when the encoder fails.
NoiseAssistedRun evolve_noise_assisted(const ExcitonChainSpec& spec, const PauliChannel& noise,
                                       const NoiseAssistedOptions& options = {});

/// Four-site target channel over {XZXZ, IYIY, IYXZ, XZIY}; the remainder of
/// unit mass goes to the identity.
PauliChannel multi_exciton_channel(double w1, double w2, double w3, double w4);

/// Two-site {XZ, IY} target with identity remainder.
PauliChannel pair_channel(double w_xz, double w_iy);

/// Bit-flip noise {(w, XX), (1 - w, II)}.
PauliChannel bit_flip_pair_noise(double w_xx);

/// Lindblad generator of the chain with on-site dephasing sqrt(gamma) Z_i.
LindbladSpec exciton_chain_lindblad(const ExcitonChainSpec& spec, double gamma);

/// max over time and sites of |a - b|.
double max_population_gap(const Trajectory& a, const Trajectory& b);

}  // namespace noisesim
