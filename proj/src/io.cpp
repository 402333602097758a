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

#include "noisesim/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include <unistd.h>

namespace noisesim {

namespace {

double number_at(const Json& j, const std::string& key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError(where, "missing key '" + key + "'");
  if (!it->is_number()) throw ConfigError(where + "/" + key, "expected a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ConfigError(where + "/" + key, "expected a finite number");
  return v;
}

double number_or(const Json& j, const std::string& key, double fallback, const std::string& where) {
  return j.contains(key) ? number_at(j, key, where) : fallback;
}

std::size_t count_or(const Json& j, const std::string& key, std::size_t fallback,
                     const std::string& where) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(where + "/" + key, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string string_at(const Json& j, const std::string& key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError(where, "missing key '" + key + "'");
  if (!it->is_string()) throw ConfigError(where + "/" + key, "expected a string");
  return it->get<std::string>();
}

PauliString pauli_at(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where, "expected a Pauli string");
  try {
    return parse_pauli(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ConfigError(where, e.what());
  }
}

Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(where, "expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json branch_json(const Branch& b) { return {{"pauli", render(b.pauli)}, {"mass", b.mass}}; }

Json set_json(const PauliSet& s) {
  Json out = Json::array();
  for (const auto& p : s) out.push_back(render(p));
  return out;
}

}  // namespace

void require_keys(const Json& j, const std::vector<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(where, "unknown key '" + key + "'");
    }
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string(), e.what());
  }
}

Json to_json(const PauliChannel& ch) {
  Json terms = Json::array();
  for (const auto& t : ch.terms()) terms.push_back({{"pauli", render(t.pauli)}, {"weight", t.weight}});
  return {{"n", ch.n_qubits()}, {"terms", terms}};
}

PauliChannel channel_from_json(const Json& j, const std::string& where) {
  require_keys(j, {"n", "terms"}, where);
  const std::size_t n = count_or(j, "n", 0, where);
  if (n == 0) throw ConfigError(where, "'n' must be a positive integer");
  if (!j.contains("terms") || !j["terms"].is_array()) throw ConfigError(where, "'terms' must be an array");
  std::vector<PauliTerm> terms;
  for (std::size_t i = 0; i < j["terms"].size(); ++i) {
    const std::string at = where + "/terms/" + std::to_string(i);
    const Json& t = j["terms"][i];
    require_keys(t, {"pauli", "weight"}, at);
    if (!t.contains("pauli")) throw ConfigError(at, "missing key 'pauli'");
    PauliString p = pauli_at(t["pauli"], at + "/pauli");
    if (p.n_qubits() != n) {
      throw ConfigError(at + "/pauli", "string has " + std::to_string(p.n_qubits()) + " qubits, expected " +
                                           std::to_string(n));
    }
    terms.push_back({number_at(t, "weight", at), std::move(p)});
  }
  try {
    return PauliChannel(n, std::move(terms));
  } catch (const std::exception& e) {
    throw ConfigError(where, e.what());
  }
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ConfigError(where, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  Matrix m(rows, rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string at = where + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != rows) throw ConfigError(at, "matrix must be square");
    for (std::size_t c = 0; c < rows; ++c) m(r, c) = complex_from_json(j[r][c], at + "/" + std::to_string(c));
  }
  return m;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    out.push_back(row);
  }
  return out;
}

LindbladSpec lindblad_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where, "expected an object");
  LindbladSpec spec;
  if (j.contains("preset")) {
    const std::string preset = string_at(j, "preset", where);
    if (preset == "dephasing-z") {
      require_keys(j, {"preset", "n", "gamma"}, where);
      const std::size_t n = count_or(j, "n", 0, where);
      if (n == 0) throw ConfigError(where, "'n' must be a positive integer");
      spec = dephasing_z_preset(n, number_at(j, "gamma", where));
    } else if (preset == "exciton-chain") {
      require_keys(j, {"preset", "chain", "gamma"}, where);
      if (!j.contains("chain")) throw ConfigError(where, "missing key 'chain'");
      spec = exciton_chain_lindblad(chain_spec_from_json(j["chain"], where + "/chain"),
                                    number_at(j, "gamma", where));
    } else {
      throw ConfigError(where + "/preset", "unknown preset '" + preset + "'");
    }
  } else {
    require_keys(j, {"hamiltonian", "jumps"}, where);
    if (!j.contains("hamiltonian")) throw ConfigError(where, "missing key 'hamiltonian'");
    spec.hamiltonian = matrix_from_json(j["hamiltonian"], where + "/hamiltonian");
    if (j.contains("jumps")) {
      if (!j["jumps"].is_array()) throw ConfigError(where + "/jumps", "expected an array of matrices");
      for (std::size_t i = 0; i < j["jumps"].size(); ++i) {
        spec.jump_operators.push_back(
            matrix_from_json(j["jumps"][i], where + "/jumps/" + std::to_string(i)));
      }
    }
  }
  try {
    spec.validate();
  } catch (const std::exception& e) {
    throw ConfigError(where, e.what());
  }
  return spec;
}

ExcitonChainSpec chain_spec_from_json(const Json& j, const std::string& where) {
  require_keys(j,
               {"n_sites", "omega0", "g", "dt", "n_steps", "system_channel", "initial_state",
                "trotter_order"},
               where);
  ExcitonChainSpec spec;
  spec.n_sites = count_or(j, "n_sites", 2, where);
  spec.omega0 = number_or(j, "omega0", spec.omega0, where);
  spec.g = number_or(j, "g", spec.g, where);
  spec.dt = number_or(j, "dt", spec.dt, where);
  spec.n_steps = count_or(j, "n_steps", spec.n_steps, where);
  if (j.contains("system_channel")) {
    spec.system_channel = channel_from_json(j["system_channel"], where + "/system_channel");
  } else if (spec.n_sites == 2) {
    spec.system_channel = pair_channel(chain_defaults::kWeightXZ, chain_defaults::kWeightIY);
  } else {
    spec.system_channel = PauliChannel::identity(spec.n_sites);
  }
  if (j.contains("initial_state")) {
    const Json& s = j["initial_state"];
    if (s.is_string()) {
      spec.initial_state = s.get<std::string>();
    } else {
      try {
        spec.initial_state =
            DensityMatrix(matrix_from_json(s, where + "/initial_state"), Validation::kFull);
      } catch (const InvariantError& e) {
        throw ConfigError(where + "/initial_state", e.what());
      }
    }
  } else {
    std::string label(spec.n_sites, '0');
    if (!label.empty()) label[0] = '1';
    spec.initial_state = label;
  }
  if (j.contains("trotter_order")) {
    const std::string t = string_at(j, "trotter_order", where);
    if (t == "exact") {
      spec.trotter_order = TrotterOrder::kExactExponential;
    } else if (t == "first_order") {
      spec.trotter_order = TrotterOrder::kFirstOrder;
    } else {
      throw ConfigError(where + "/trotter_order", "expected 'exact' or 'first_order'");
    }
  }
  try {
    spec.validate();
  } catch (const std::exception& e) {
    throw ConfigError(where, e.what());
  }
  return spec;
}

Json to_json(const EncodingSchedule& schedule) {
  Json steps = Json::array();
  for (const auto& s : schedule.steps) {
    Json branches = Json::array();
    for (const auto& b : s.branches) branches.push_back(branch_json(b));
    steps.push_back({{"iteration", s.iteration},
                     {"node", render(s.node)},
                     {"node_mass", s.node_mass},
                     {"branches", branches}});
  }
  Json residues = Json::object();
  for (const auto& [p, r] : schedule.final_ledger.entries) residues[render(p)] = r;
  return {{"n_qubits", schedule.n_qubits},
          {"converged", schedule.converged},
          {"stop_reason", render(schedule.stop_reason)},
          {"diagnostic", schedule.diagnostic},
          {"encoded_mass", schedule.final_ledger.encoded_mass},
          {"final_residues", residues},
          {"steps", steps}};
}

Json to_json(const ClusterReport& report) {
  return {{"node", render(report.node)},
          {"noise_support", set_json(report.noise_support)},
          {"members", set_json(report.members)},
          {"braid", set_json(report.braid)},
          {"braid_dimension", report.braid_dimension},
          {"cluster_dimension", report.cluster_dimension},
          {"entropy", report.entropy},
          {"all_to_all", report.all_to_all}};
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::vector<std::string>& header) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

CsvWriter& CsvWriter::cell(const std::string& s) {
  if (row_open_) text_ += ',';
  text_ += s;
  row_open_ = true;
  return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_number(v)); }
CsvWriter& CsvWriter::cell(std::size_t v) { return cell(std::to_string(v)); }
CsvWriter& CsvWriter::cell(bool v) { return cell(std::string(v ? "1" : "0")); }

void CsvWriter::end_row() {
  text_ += '\n';
  row_open_ = false;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp =
      path.string() + ".tmp." + std::to_string(static_cast<long long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), std::streamsize(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string());
  }
}

}  // namespace noisesim
