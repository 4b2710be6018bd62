/**
 * Copyright 2026 The fedround Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FEDROUND_CLI_CONFIG_H_
#define FEDROUND_CLI_CONFIG_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "fedround/partition.h"
#include "fedround/report.h"
#include "fedround/simulator.h"
#include "fedround/synth.h"

namespace fedround::cli {

// Unknown or malformed configuration key; maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class RunKind { kFederated, kCentralized };
enum class DatasetKind { kMnist, kSynth };

// Everything one `run` needs, resolved from a flat key = value file plus
// command-line overrides. Keys are documented in configs/README.md.
struct RunConfig {
  std::string name = "experiment";
  RunKind kind = RunKind::kFederated;
  DatasetKind dataset = DatasetKind::kMnist;
  std::string data_dir;
  SynthConfig synth;
  double synth_test_fraction = 0.2;

  ExperimentConfig experiment;    // federated runs
  TrainingConfig training;        // client or centralized training
  BootstrapSettings bootstrap{100, 0};
  // Set by poll_interval_ms. The standalone client otherwise polls at the
  // ClientOptions default, the loopback simulator at NetworkOptions'.
  std::optional<std::chrono::milliseconds> poll_interval;
};

// Raw key/value pairs in file order. Lines are `key = value`; `#` starts a
// comment. Throws ConfigError on a malformed line.
std::map<std::string, std::string> parse_key_values(const std::string& text);

// Applies `values` on top of the defaults. Throws ConfigError naming the
// first unknown key or bad value.
RunConfig resolve_config(const std::map<std::string, std::string>& values);

// Canonical key/value form of a resolved config (for manifests).
std::map<std::string, std::string> describe_config(const RunConfig& config);

std::vector<std::string> known_keys();

// Finds a config by path, or by bundled name ("basic_fl") in
// $FEDROUND_CONFIG_DIR, then the source tree, then the install prefix.
std::filesystem::path locate_config(const std::string& name_or_path);

// File + overrides -> RunConfig.
RunConfig load_config(const std::string& name_or_path,
                      const std::map<std::string, std::string>& overrides);

}  // namespace fedround::cli

#endif  // FEDROUND_CLI_CONFIG_H_
