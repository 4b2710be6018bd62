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

#ifndef FEDROUND_CLI_COMMANDS_H_
#define FEDROUND_CLI_COMMANDS_H_

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fedround::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

// Flags shared by the config-driven subcommands. `overrides` holds the
// `--key=value` pairs; --seed, --mode and --rounds are folded into it.
struct CommonArgs {
  std::string config;
  std::string data_dir;  // falls back to the config, then $FEDROUND_DATA_DIR
  std::filesystem::path out;
  std::map<std::string, std::string> overrides;
};

struct ServeArgs {
  CommonArgs common;
  std::string bind = "127.0.0.1:8080";
  int linger_ms = 2000;  // keep answering after the last round so clients see it
};

struct ClientArgs {
  CommonArgs common;
  std::string server_url;
  std::string client_id;
  std::filesystem::path partition;  // optional partition.json
};

struct ReportArgs {
  std::vector<std::filesystem::path> run_dirs;
  bool json = false;
  int precision = 3;
  std::filesystem::path out;  // optional JSON file
};

// Each returns an exit code and reports problems on `err`.
int cmd_prepare(const std::string& data_dir, const std::filesystem::path& out, std::ostream& os,
                std::ostream& err);
int cmd_partition(const CommonArgs& args, std::ostream& os, std::ostream& err);
int cmd_run(const CommonArgs& args, std::ostream& os, std::ostream& err);
int cmd_serve(const ServeArgs& args, std::ostream& os, std::ostream& err);
int cmd_client(const ClientArgs& args, std::ostream& os, std::ostream& err);
int cmd_report(const ReportArgs& args, std::ostream& os, std::ostream& err);

// Table 1 row order for the bundled experiments; others sort after, by name.
std::vector<std::string> table_order();

// Run-directory file names.
inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kHistoryFile = "history.jsonl";
inline constexpr const char* kEpochsFile = "epochs.jsonl";
inline constexpr const char* kWeightsFile = "weights.json";
inline constexpr const char* kMetricsFile = "metrics.json";
inline constexpr const char* kConfusionFile = "confusion.txt";
inline constexpr const char* kPartitionFile = "partition.json";
inline constexpr const char* kRoundsFile = "rounds.json";

}  // namespace fedround::cli

#endif  // FEDROUND_CLI_COMMANDS_H_
