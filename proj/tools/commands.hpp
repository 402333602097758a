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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace noisesim::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNonConvergence = 2,
  kInvariant = 3,
};

struct CommonArgs {
  std::optional<std::filesystem::path> config;
  std::filesystem::path out = ".";
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

struct EncodeArgs {
  CommonArgs common;
  std::optional<std::string> mode;
  std::optional<std::string> node;
  std::optional<double> tol;
  std::optional<std::size_t> max_iters;
};

struct ClusterArgs {
  CommonArgs common;
  std::optional<std::string> node;
  std::vector<std::string> noise;
  bool dot = false;
};

struct BoundArgs {
  CommonArgs common;
  std::vector<std::size_t> n;
  std::vector<std::string> p;
  std::optional<std::size_t> trials;
};

struct SimulateArgs {
  CommonArgs common;
  std::optional<std::string> mode;
  std::optional<std::filesystem::path> noise;
  std::optional<std::string> encoder;
  std::optional<double> tol;
};

struct ValidateArgs {
  CommonArgs common;
};

int run_encode(const EncodeArgs& args);
int run_cluster(const ClusterArgs& args);
int run_bound(const BoundArgs& args);
int run_simulate(const SimulateArgs& args);
int run_validate(const ValidateArgs& args);

/// Parses argv and dispatches; maps exceptions onto exit codes.
int main(int argc, char** argv);

}  // namespace noisesim::cli
