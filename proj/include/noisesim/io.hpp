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

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "noisesim/channels.hpp"
#include "noisesim/choi.hpp"
#include "noisesim/clusters.hpp"
#include "noisesim/dynamics.hpp"
#include "noisesim/encoder.hpp"

namespace noisesim {

using Json = nlohmann::json;

/// Malformed or schema-violating configuration. `where` is a JSON-pointer
/// style path to the offending value.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// Throws ConfigError when `j` is not an object or has keys outside `allowed`.
void require_keys(const Json& j, const std::vector<std::string>& allowed, const std::string& where);

Json read_json_file(const std::filesystem::path& path);

// Channels: {"n": 2, "terms": [{"pauli": "XZ", "weight": 0.6}, ...]}
Json to_json(const PauliChannel& ch);
PauliChannel channel_from_json(const Json& j, const std::string& where = "channel");

/// Either {"preset": "dephasing-z", "n": 2, "gamma": 0.1},
/// {"preset": "exciton-chain", "chain": {...}, "gamma": 0.1}, or raw
/// {"hamiltonian": M, "jumps": [M, ...]} with M a nested array of [re, im].
LindbladSpec lindblad_from_json(const Json& j, const std::string& where = "lindblad");
Matrix matrix_from_json(const Json& j, const std::string& where);
Json to_json(const Matrix& m);

/// Chain keys: n_sites, omega0, g, dt, n_steps, system_channel,
/// initial_state (bit label or matrix), trotter_order ("exact" | "first_order").
ExcitonChainSpec chain_spec_from_json(const Json& j, const std::string& where = "chain");

Json to_json(const EncodingSchedule& schedule);
Json to_json(const ClusterReport& report);

/// Shortest decimal that round-trips, '.' separator regardless of locale.
std::string format_number(double v);

/// Builds CSV text with LF line endings.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);
  CsvWriter& cell(const std::string& s);
  CsvWriter& cell(double v);
  CsvWriter& cell(std::size_t v);
  CsvWriter& cell(bool v);
  void end_row();
  const std::string& str() const noexcept { return text_; }

 private:
  std::string text_;
  bool row_open_ = false;
};

/// Writes to a sibling temporary file, then renames over `path`, so readers
/// never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace noisesim
