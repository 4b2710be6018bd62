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

#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "fedround_cli/commands.h"

namespace {

using namespace fedround::cli;

// Turns leftover `--key=value` arguments into config overrides.
bool collect_overrides(const std::vector<std::string>& extras,
                       std::map<std::string, std::string>& overrides) {
  for (const auto& arg : extras) {
    const auto eq = arg.find('=');
    if (arg.rfind("--", 0) != 0 || eq == std::string::npos || eq == 2) {
      std::cerr << "unexpected argument '" << arg << "' (overrides are --key=value)\n";
      return false;
    }
    overrides[arg.substr(2, eq - 2)] = arg.substr(eq + 1);
  }
  return true;
}

void add_common(CLI::App* cmd, CommonArgs& args, std::string& seed, std::string& mode,
                std::string& rounds) {
  cmd->add_option("--config", args.config, "Config file or bundled config name")->required();
  cmd->add_option("--data-dir", args.data_dir, "MNIST directory")->envname("FEDROUND_DATA_DIR");
  cmd->add_option("--out", args.out, "Output path");
  cmd->add_option("--seed", seed, "Master seed");
  cmd->add_option("--mode", mode, "in_process or networked");
  cmd->add_option("--rounds", rounds, "Number of federated rounds");
  cmd->allow_extras();
}

void fold(CommonArgs& args, const std::string& seed, const std::string& mode,
          const std::string& rounds) {
  if (!seed.empty()) args.overrides["seed"] = seed;
  if (!mode.empty()) args.overrides["mode"] = mode;
  if (!rounds.empty()) args.overrides["max_rounds"] = rounds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Federated averaging experiments on MNIST", "fedround"};
  app.require_subcommand(1);
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off");

  std::string prepare_dir;
  std::filesystem::path prepare_out;
  auto* prepare = app.add_subcommand("prepare", "Validate and digest the MNIST IDX files");
  prepare->add_option("--data-dir", prepare_dir, "MNIST directory")->envname("FEDROUND_DATA_DIR");
  prepare->add_option("--out", prepare_out, "Write the digest manifest here");

  CommonArgs partition_args, run_args;
  ServeArgs serve_args;
  ClientArgs client_args;
  std::string seed[4], mode[4], rounds[4];

  auto* partition = app.add_subcommand("partition", "Split the training set across clients");
  add_common(partition, partition_args, seed[0], mode[0], rounds[0]);

  auto* run = app.add_subcommand("run", "Run one experiment into a run directory");
  add_common(run, run_args, seed[1], mode[1], rounds[1]);

  auto* serve = app.add_subcommand("serve", "Run the round server");
  add_common(serve, serve_args.common, seed[2], mode[2], rounds[2]);
  serve->add_option("--bind", serve_args.bind, "host:port to listen on");

  auto* client = app.add_subcommand("client", "Run one client against a round server");
  add_common(client, client_args.common, seed[3], mode[3], rounds[3]);
  client->add_option("--server-url", client_args.server_url, "e.g. http://10.0.0.1:8080")->required();
  client->add_option("--client-id", client_args.client_id, "e.g. client_03")->required();
  client->add_option("--partition", client_args.partition, "partition.json from `partition`");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Compare finished runs");
  report->add_option("runs", report_args.run_dirs, "Run directories")->required();
  report->add_flag("--json", report_args.json, "Print JSON instead of text");
  report->add_option("--precision", report_args.precision, "Digits after the decimal point");
  report->add_option("--out", report_args.out, "Also write the JSON here");

  for (auto* cmd : app.get_subcommands({})) {
    cmd->add_option("--log-level", log_level, "trace, debug, info, warn, error or off");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto level = spdlog::level::from_str(log_level);
  spdlog::set_level(level);

  auto with_overrides = [&](CLI::App* cmd, CommonArgs& args, int i) {
    fold(args, seed[i], mode[i], rounds[i]);
    return collect_overrides(cmd->remaining(), args.overrides);
  };

  if (*prepare) return cmd_prepare(prepare_dir, prepare_out, std::cout, std::cerr);
  if (*partition) {
    if (!with_overrides(partition, partition_args, 0)) return kExitUsage;
    return cmd_partition(partition_args, std::cout, std::cerr);
  }
  if (*run) {
    if (!with_overrides(run, run_args, 1)) return kExitUsage;
    return cmd_run(run_args, std::cout, std::cerr);
  }
  if (*serve) {
    if (!with_overrides(serve, serve_args.common, 2)) return kExitUsage;
    return cmd_serve(serve_args, std::cout, std::cerr);
  }
  if (*client) {
    if (!with_overrides(client, client_args.common, 3)) return kExitUsage;
    return cmd_client(client_args, std::cout, std::cerr);
  }
  return cmd_report(report_args, std::cout, std::cerr);
}
