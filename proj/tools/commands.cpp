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

#include "commands.hpp"

#include <atomic>
#include <exception>
#include <iostream>
#include <thread>

#include "CLI11.hpp"

#include "noisesim/choi.hpp"
#include "noisesim/clusters.hpp"
#include "noisesim/dynamics.hpp"
#include "noisesim/encoder.hpp"
#include "noisesim/io.hpp"
#include "noisesim/random.hpp"
#include "noisesim/validate.hpp"

namespace noisesim::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 7;
constexpr std::size_t kDefaultMaxIters = 1000;
constexpr std::size_t kTraceAllStringsUpTo = 3;

Json load_config(const CommonArgs& common) {
  if (!common.config) return Json::object();
  Json j = read_json_file(*common.config);
  if (!j.is_object()) throw ConfigError(common.config->string(), "top level must be an object");
  return j;
}

std::filesystem::path prepare_out(const CommonArgs& common) {
  std::filesystem::create_directories(common.out);
  return common.out;
}

std::string string_or(const Json& j, const std::string& key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string()) throw ConfigError(key, "expected a string");
  return j[key].get<std::string>();
}

double number_or(const Json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError(key, "expected a number");
  return j[key].get<double>();
}

std::size_t count_or(const Json& j, const std::string& key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer() || j[key].get<long long>() < 0) {
    throw ConfigError(key, "expected a non-negative integer");
  }
  return j[key].get<std::size_t>();
}

std::uint64_t seed_of(const CommonArgs& common, const Json& j) {
  if (common.seed) return *common.seed;
  if (!j.contains("seed")) return kDefaultSeed;
  if (!j["seed"].is_number_unsigned()) throw ConfigError("seed", "expected an unsigned integer");
  return j["seed"].get<std::uint64_t>();
}

EncoderMode parse_mode(const std::string& s) {
  if (s == "fixed") return EncoderMode::kFixed;
  if (s == "adaptive") return EncoderMode::kAdaptive;
  throw ConfigError("mode", "expected 'fixed' or 'adaptive', got '" + s + "'");
}

PauliString parse_node(const std::string& s, std::size_t n) {
  PauliString p;
  try {
    p = parse_pauli(s);
  } catch (const ParseError& e) {
    throw ConfigError("node", e.what());
  }
  if (p.n_qubits() != n) throw ConfigError("node", "node '" + s + "' does not match the register");
  return p;
}

PauliString heaviest_target(const PauliChannel& ch) {
  const PauliTerm* best = nullptr;
  for (const auto& t : ch.terms()) {
    if (!t.pauli.is_identity() && (best == nullptr || t.weight > best->weight)) best = &t;
  }
  if (best == nullptr) throw ConfigError("system", "channel has no non-identity string to encode");
  return best->pauli;
}

double parse_order(const Json& j, const std::string& where) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kInfinity;
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size() && v >= 1.0) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(where, "Schatten order must be a number >= 1 or 'inf', got '" + s + "'");
  }
  if (!j.is_number() || j.get<double>() < 1.0) throw ConfigError(where, "Schatten order must be >= 1");
  return j.get<double>();
}

std::string render_order(double p) { return std::isinf(p) ? "inf" : format_number(p); }

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  threads = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned w) {
    try {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    } catch (...) {
      errors[w] = std::current_exception();
      next = count;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker, w);
  worker(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void add_common(CLI::App* cmd, CommonArgs& c) {
  cmd->add_option("--config", c.config, "JSON configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out, "output directory")->capture_default_str();
  cmd->add_option("--seed", c.seed, "base seed");
  cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
}

}  // namespace

int run_encode(const EncodeArgs& args) {
  const Json cfg = load_config(args.common);
  require_keys(cfg, {"system", "noise", "mode", "node", "tol", "max_iters", "seed"}, "encode");
  if (!cfg.contains("system")) throw ConfigError("encode", "missing key 'system'");
  if (!cfg.contains("noise")) throw ConfigError("encode", "missing key 'noise'");
  const PauliChannel system = channel_from_json(cfg["system"], "system");
  const PauliChannel noise = channel_from_json(cfg["noise"], "noise");
  if (system.n_qubits() != noise.n_qubits()) throw ConfigError("noise", "register differs from system");

  const EncoderMode mode = parse_mode(args.mode.value_or(string_or(cfg, "mode", "adaptive")));
  const double tol = args.tol.value_or(
      number_or(cfg, "tol", mode == EncoderMode::kFixed ? 1e-6 : kDefaultAdaptiveTolerance));
  const std::size_t max_iters = args.max_iters.value_or(count_or(cfg, "max_iters", kDefaultMaxIters));

  EncodingResult result;
  if (mode == EncoderMode::kFixed) {
    const std::string node_text = args.node.value_or(string_or(cfg, "node", ""));
    const PauliString node =
        node_text.empty() ? heaviest_target(system) : parse_node(node_text, system.n_qubits());
    result = encode_fixed(system, noise, node, max_iters, tol);
  } else {
    result = encode_adaptive(system, noise, tol, max_iters);
  }

  std::vector<PauliString> columns;
  if (system.n_qubits() <= kTraceAllStringsUpTo) {
    columns = all_pauli_strings(system.n_qubits());
  } else {
    columns = result.trace.tracked_strings();
  }
  std::erase_if(columns, [](const PauliString& p) { return p.is_identity(); });

  std::vector<std::string> header{"iteration"};
  for (const auto& p : columns) header.push_back(render(p));
  CsvWriter csv(header);
  for (const auto& snap : result.trace.snapshots) {
    csv.cell(snap.iteration);
    for (const auto& p : columns) {
      auto it = snap.residues.find(p);
      csv.cell(it == snap.residues.end() ? 0.0 : it->second);
    }
    csv.end_row();
  }

  const EffectiveChannel eff = effective_channel(result.schedule);
  const auto over = overencoding_report(result.trace, tol);
  std::string over_text;
  for (const auto& o : over) over_text += (over_text.empty() ? "" : ",") + render(o.pauli);

  const auto out = prepare_out(args.common);
  write_file_atomic(out / "trace.csv", csv.str());
  write_file_atomic(out / "schedule.json", to_json(result.schedule).dump(2) + "\n");

  std::cout << "converged=" << (result.schedule.converged ? "true" : "false")
            << " stop_reason=" << render(result.schedule.stop_reason)
            << " iterations=" << result.schedule.steps.size()
            << " encoded_mass=" << format_number(eff.encoded_mass)
            << " identity_remainder=" << format_number(eff.identity_remainder)
            << " max_abs_residue=" << format_number(result.schedule.final_ledger.max_abs_target_residue())
            << " over_encoded=" << (over_text.empty() ? "none" : over_text) << "\n";
  if (!result.schedule.converged && !result.schedule.diagnostic.empty()) {
    std::cerr << "encode: " << result.schedule.diagnostic << "\n";
  }
  return result.schedule.converged ? kOk : kNonConvergence;
}

int run_cluster(const ClusterArgs& args) {
  const Json cfg = load_config(args.common);
  require_keys(cfg, {"node", "noise", "dot", "seed"}, "cluster");
  const std::string node_text = args.node.value_or(string_or(cfg, "node", ""));
  if (node_text.empty()) throw ConfigError("cluster", "a node is required");
  PauliString node;
  try {
    node = parse_pauli(node_text);
  } catch (const ParseError& e) {
    throw ConfigError("node", e.what());
  }

  PauliSet noise;
  if (!args.noise.empty()) {
    for (const auto& s : args.noise) noise.insert(parse_node(s, node.n_qubits()));
  } else if (cfg.contains("noise") && cfg["noise"].is_array()) {
    for (const auto& s : cfg["noise"]) {
      if (!s.is_string()) throw ConfigError("noise", "expected an array of Pauli strings");
      noise.insert(parse_node(s.get<std::string>(), node.n_qubits()));
    }
  } else if (cfg.contains("noise")) {
    const PauliChannel ch = channel_from_json(cfg["noise"], "noise");
    if (ch.n_qubits() != node.n_qubits()) throw ConfigError("noise", "register differs from node");
    noise = support_of(ch);
  } else {
    throw ConfigError("cluster", "noise strings are required");
  }

  const bool dot = args.dot || (cfg.contains("dot") && cfg["dot"].is_boolean() && cfg["dot"].get<bool>());
  const ClusterReport report = classify(node, noise);
  const std::string text = to_json(report).dump(2) + "\n";
  const auto out = prepare_out(args.common);
  write_file_atomic(out / "cluster.json", text);
  if (dot) write_file_atomic(out / "cluster.dot", to_dot(report));
  std::cout << text;
  return kOk;
}

int run_bound(const BoundArgs& args) {
  const Json cfg = load_config(args.common);
  require_keys(cfg, {"n", "p", "trials", "seed"}, "bound");

  std::vector<std::size_t> ns = args.n;
  if (ns.empty() && cfg.contains("n")) {
    if (cfg["n"].is_array()) {
      for (const auto& v : cfg["n"]) {
        if (!v.is_number_unsigned()) throw ConfigError("n", "expected positive integers");
        ns.push_back(v.get<std::size_t>());
      }
    } else if (cfg["n"].is_number_unsigned()) {
      ns.push_back(cfg["n"].get<std::size_t>());
    } else {
      throw ConfigError("n", "expected an integer or an array of integers");
    }
  }
  if (ns.empty()) ns = {1, 2};
  for (std::size_t n : ns) {
    if (n < 1 || n > 4) throw ConfigError("n", "qubit counts must lie in 1..4");
  }

  std::vector<double> orders;
  if (!args.p.empty()) {
    for (const auto& s : args.p) orders.push_back(parse_order(Json(s), "p"));
  } else if (cfg.contains("p")) {
    if (!cfg["p"].is_array()) throw ConfigError("p", "expected an array");
    for (const auto& v : cfg["p"]) orders.push_back(parse_order(v, "p"));
  } else {
    orders = {1.0, 1.5, 2.0, 3.0};
  }
  if (orders.empty()) throw ConfigError("p", "at least one order is required");

  const std::size_t trials = args.trials.value_or(count_or(cfg, "trials", 100));
  const std::uint64_t seed = seed_of(args.common, cfg);

  struct Trial {
    std::size_t n = 0;
    std::vector<BoundReport> reports;
  };
  std::vector<Trial> results(trials);
  parallel_for(trials, args.common.threads, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    const std::size_t n = ns[t % ns.size()];
    const PauliChannel sys = random_pauli_channel(n, rng);
    const PauliChannel eff = random_pauli_channel(n, rng);
    const DensityMatrix rho = random_density_matrix(std::size_t{1} << n, rng);
    Trial out{n, {}};
    for (double p : orders) out.reports.push_back(choi_bound_check(sys, eff, rho, p));
    results[t] = std::move(out);
  });

  CsvWriter csv({"trial", "n", "p", "lhs", "mid", "choi_dist", "renyi", "final_rhs", "entropy_rhs",
                 "plain_rhs", "lower_lhs", "duality_error", "holds_i", "holds_ii", "holds_iii"});
  std::size_t violations = 0;
  double worst_duality = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    for (const auto& r : results[t].reports) {
      csv.cell(t).cell(results[t].n).cell(render_order(r.p));
      csv.cell(r.lhs).cell(r.sandwich_mid).cell(r.choi_dist).cell(r.renyi).cell(r.final_rhs);
      if (r.upper_applicable) {
        csv.cell(r.entropy_rhs).cell(r.plain_rhs);
      } else {
        csv.cell(std::string()).cell(std::string());
      }
      csv.cell(r.lower_lhs).cell(r.duality_error);
      csv.cell(r.holds_final).cell(r.holds_upper).cell(r.holds_lower);
      csv.end_row();
      if (!r.all_hold()) ++violations;
      worst_duality = std::max(worst_duality, r.duality_error);
    }
  }
  const auto out = prepare_out(args.common);
  write_file_atomic(out / "bound.csv", csv.str());

  const bool ok = violations == 0 && worst_duality <= 1e-9;
  std::cout << "verdict=" << (ok ? "PASS" : "FAIL") << " trials=" << trials
            << " checks=" << trials * orders.size() << " violations=" << violations
            << " max_duality_error=" << format_number(worst_duality) << "\n";
  return ok ? kOk : kInvariant;
}

int run_simulate(const SimulateArgs& args) {
  Json cfg = load_config(args.common);
  require_keys(cfg,
               {"n_sites", "omega0", "g", "dt", "n_steps", "system_channel", "initial_state",
                "trotter_order", "noise", "mode", "encoder", "tol", "max_iters", "node", "lindblad",
                "seed"},
               "simulate");
  Json chain_json = Json::object();
  for (const char* key : {"n_sites", "omega0", "g", "dt", "n_steps", "system_channel", "initial_state",
                          "trotter_order"}) {
    if (cfg.contains(key)) chain_json[key] = cfg[key];
  }
  const ExcitonChainSpec spec = chain_spec_from_json(chain_json, "simulate");

  const std::string mode = args.mode.value_or(string_or(cfg, "mode", "both"));
  if (mode != "reference" && mode != "noise-assisted" && mode != "both") {
    throw ConfigError("mode", "expected reference, noise-assisted or both");
  }
  const bool want_ref = mode != "noise-assisted";
  const bool want_na = mode != "reference";

  PauliChannel noise = bit_flip_pair_noise(chain_defaults::kNoiseXX);
  if (args.noise) {
    noise = channel_from_json(read_json_file(*args.noise), args.noise->string());
  } else if (cfg.contains("noise")) {
    noise = channel_from_json(cfg["noise"], "noise");
  }

  NoiseAssistedOptions opt;
  opt.mode = parse_mode(args.encoder.value_or(string_or(cfg, "encoder", "adaptive")));
  opt.tol = args.tol.value_or(number_or(cfg, "tol", 1e-6));
  opt.max_iters = count_or(cfg, "max_iters", 10000);
  if (cfg.contains("node")) opt.node = parse_node(string_or(cfg, "node", ""), spec.n_sites);

  std::optional<LindbladSpec> lindblad;
  std::size_t substeps = 10;
  if (cfg.contains("lindblad")) {
    Json lj = cfg["lindblad"];
    if (!lj.is_object()) throw ConfigError("lindblad", "expected an object");
    substeps = count_or(lj, "substeps", substeps);
    if (substeps == 0) throw ConfigError("lindblad/substeps", "must be positive");
    lj.erase("substeps");
    if (lj.value("preset", "") == "exciton-chain" && !lj.contains("chain")) lj["chain"] = chain_json;
    lindblad = lindblad_from_json(lj, "lindblad");
    if (lindblad->dim() != (std::size_t{1} << spec.n_sites)) {
      throw ConfigError("lindblad", "generator dimension does not match the chain");
    }
  }

  std::optional<Trajectory> ref, na, lb;
  if (want_ref) ref = evolve_reference(spec);
  if (want_na) na = evolve_noise_assisted(spec, noise, opt).trajectory;
  if (lindblad) {
    const auto states = evolve_lindblad_rk4(spec.initial_density(), *lindblad,
                                            spec.dt / double(substeps), spec.n_steps * substeps);
    Trajectory t;
    for (std::size_t s = 0; s <= spec.n_steps; ++s) {
      t.times.push_back(double(s) * spec.dt);
      t.populations.push_back(site_populations(states[s * substeps]));
    }
    lb = std::move(t);
  }

  std::vector<std::string> header{"t"};
  auto add_cols = [&](const std::string& prefix) {
    for (std::size_t i = 1; i <= spec.n_sites; ++i) header.push_back(prefix + "_n" + std::to_string(i));
  };
  if (ref) add_cols("ref");
  if (na) add_cols("na");
  if (lb) add_cols("lb");
  CsvWriter csv(header);
  for (std::size_t s = 0; s <= spec.n_steps; ++s) {
    csv.cell(double(s) * spec.dt);
    for (const auto* tr : {&ref, &na, &lb}) {
      if (!*tr) continue;
      for (double v : (*tr)->populations[s]) csv.cell(v);
    }
    csv.end_row();
  }
  const auto out = prepare_out(args.common);
  write_file_atomic(out / "populations.csv", csv.str());

  std::cout << "steps=" << spec.n_steps << " sites=" << spec.n_sites
            << " trotter=" << render(spec.trotter_order);
  if (na) std::cout << " encoder=" << render(opt.mode) << " tol=" << format_number(opt.tol);
  if (ref && na) std::cout << " max_gap_na_ref=" << format_number(max_population_gap(*na, *ref));
  if (ref && lb) std::cout << " max_gap_lindblad_ref=" << format_number(max_population_gap(*lb, *ref));
  std::cout << "\n";
  return kOk;
}

int run_validate(const ValidateArgs& args) {
  const Json cfg = load_config(args.common);
  require_keys(cfg, {"seed"}, "validate");
  const auto results = run_validation(seed_of(args.common, cfg));
  std::size_t passed = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.module << ": " << r.name << " (" << r.detail << ")\n";
    passed += r.passed ? 1 : 0;
  }
  std::cout << "validate: " << passed << "/" << results.size() << " checks passed\n";
  return passed == results.size() ? kOk : kInvariant;
}

int main(int argc, char** argv) {
  CLI::App app{"noise-assisted open quantum system simulator"};
  app.require_subcommand(1);

  EncodeArgs encode;
  auto* enc = app.add_subcommand("encode", "partially encode a target Pauli channel");
  add_common(enc, encode.common);
  enc->add_option("--mode", encode.mode, "fixed | adaptive")->check(CLI::IsMember({"fixed", "adaptive"}));
  enc->add_option("--node", encode.node, "fixed-mode node string");
  enc->add_option("--tol", encode.tol, "residue tolerance");
  enc->add_option("--max-iters", encode.max_iters, "iteration cap");

  ClusterArgs cluster;
  auto* clu = app.add_subcommand("cluster", "classify the cluster of a node under noise");
  add_common(clu, cluster.common);
  clu->add_option("--node", cluster.node, "node string");
  clu->add_option("--noise", cluster.noise, "comma-separated noise strings")->delimiter(',');
  clu->add_flag("--dot", cluster.dot, "also write cluster.dot");

  BoundArgs bound;
  auto* bnd = app.add_subcommand("bound", "randomized Choi-distance bound certificates");
  add_common(bnd, bound.common);
  bnd->add_option("--n", bound.n, "qubit counts, cycled over trials")->delimiter(',');
  bnd->add_option("--p", bound.p, "Schatten orders (numbers or inf)")->delimiter(',');
  bnd->add_option("--trials", bound.trials, "number of trials");

  SimulateArgs simulate;
  auto* sim = app.add_subcommand("simulate", "exciton chain benchmark");
  add_common(sim, simulate.common);
  sim->add_option("--mode", simulate.mode, "reference | noise-assisted | both")
      ->check(CLI::IsMember({"reference", "noise-assisted", "both"}));
  sim->add_option("--noise", simulate.noise, "noise channel JSON file")->check(CLI::ExistingFile);
  sim->add_option("--encoder", simulate.encoder, "fixed | adaptive")
      ->check(CLI::IsMember({"fixed", "adaptive"}));
  sim->add_option("--tol", simulate.tol, "encoder tolerance");

  ValidateArgs validate;
  auto* val = app.add_subcommand("validate", "run the invariant suite");
  add_common(val, validate.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (enc->parsed()) return run_encode(encode);
    if (clu->parsed()) return run_cluster(cluster);
    if (bnd->parsed()) return run_bound(bound);
    if (sim->parsed()) return run_simulate(simulate);
    if (val->parsed()) return run_validate(validate);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const NonConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const EncodingError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace noisesim::cli
