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

#include "fedround_cli/commands.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "fedround/client.h"
#include "fedround/digest.h"
#include "fedround/errors.h"
#include "fedround/http.h"
#include "fedround/idx.h"
#include "fedround/protocol.h"
#include "fedround/rng.h"
#include "fedround/wire.h"
#include "fedround_cli/config.h"

#ifndef FEDROUND_VERSION
#define FEDROUND_VERSION "0.0.0"
#endif

namespace fedround::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Maps exceptions onto the exit-code contract.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "invalid parameter: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RunDivergedError& e) {
    err << "diverged at round " << e.round() << " (client " << e.client() << "): " << e.what()
        << "\n";
    return kExitRuntime;
  } catch (const DivergenceError& e) {
    err << "diverged at epoch " << e.epoch() << ": " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

std::string resolve_data_dir(const std::string& flag, const RunConfig& cfg) {
  if (!flag.empty()) return flag;
  if (!cfg.data_dir.empty()) return cfg.data_dir;
  if (const char* env = std::getenv("FEDROUND_DATA_DIR"); env && *env) return env;
  throw ConfigError("no data directory: pass --data-dir or set FEDROUND_DATA_DIR");
}

struct Inputs {
  Dataset train;
  Dataset test;
  json digests = json::array();
  std::string data_dir;
};

json file_entry(const std::string& role, const fs::path& path) {
  return {{"role", role},
          {"path", fs::absolute(path).lexically_normal().string()},
          {"bytes", fs::file_size(path)},
          {"sha256", sha256_file(path)}};
}

// Deterministic train/test split of the synthetic set.
TrainTest split_synth(const Dataset& all, double test_fraction, std::uint64_t seed) {
  const std::size_t n = all.labels.size();
  const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));
  if (n_test == 0 || n_test >= n) throw ConfigError("synth.test_fraction leaves an empty split");
  Rng rng(derive_seed(seed, {hash_string("split")}));
  auto order = rng.permutation(n);
  std::vector<std::size_t> test(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
  std::vector<std::size_t> train(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
  std::sort(test.begin(), test.end());
  std::sort(train.begin(), train.end());
  return {all.subset(train), all.subset(test)};
}

Inputs load_inputs(const RunConfig& cfg, const std::string& data_dir_flag) {
  Inputs in;
  if (cfg.dataset == DatasetKind::kSynth) {
    auto tt = split_synth(synth_binary(cfg.synth), cfg.synth_test_fraction, cfg.synth.seed);
    in.train = std::move(tt.train);
    in.test = std::move(tt.test);
    return in;
  }
  in.data_dir = resolve_data_dir(data_dir_flag, cfg);
  const auto files = MnistFiles::in(in.data_dir);
  for (const auto& [role, path] : {std::pair{"train_images", files.train_images},
                                   std::pair{"train_labels", files.train_labels},
                                   std::pair{"test_images", files.test_images},
                                   std::pair{"test_labels", files.test_labels}}) {
    if (!fs::is_regular_file(path)) throw FormatError("missing data file " + path.string());
    in.digests.push_back(file_entry(role, path));
  }
  auto tt = load_mnist(in.data_dir);
  in.train = std::move(tt.train);
  in.test = std::move(tt.test);
  return in;
}

json config_json(const RunConfig& cfg) {
  json j = json::object();
  for (const auto& [k, v] : describe_config(cfg)) j[k] = v;
  return j;
}

json seeds_json(const RunConfig& cfg) {
  json s{{"master", cfg.experiment.master_seed},
         {"init", init_seed_for(cfg.experiment.master_seed)},
         {"bootstrap", cfg.bootstrap.seed}};
  if (cfg.kind == RunKind::kFederated) s["partition"] = cfg.experiment.partition.seed;
  if (cfg.dataset == DatasetKind::kSynth) s["synth"] = cfg.synth.seed;
  return s;
}

json manifest_json(const RunConfig& cfg, const Inputs& in, const json& outputs) {
  return {{"artifact", "fedround"},
          {"version", FEDROUND_VERSION},
          {"name", cfg.name},
          {"config", config_json(cfg)},
          {"inputs", in.digests},
          {"seeds", seeds_json(cfg)},
          {"outputs", outputs}};
}

RunConfig load(const CommonArgs& args) {
  if (args.config.empty()) throw ConfigError("--config is required");
  return load_config(args.config, args.overrides);
}

fs::path run_dir(const CommonArgs& args, const RunConfig& cfg) {
  return args.out.empty() ? fs::path("runs") / cfg.name : args.out;
}

json rounds_json(const std::vector<RoundRecord>& history) {
  json out = json::array();
  for (const auto& r : history) out.push_back({{"round", r.round}, {"participants", r.participants}});
  return out;
}

void write_report(const fs::path& dir, const MetricsReport& report) {
  wire::write_json_atomic(dir / kMetricsFile, report_to_json(report), 2);
  wire::write_text_atomic(dir / kConfusionFile, render_confusion(report.confusion));
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// One line per evaluation, flushed so long runs can be followed.
class JsonLines {
 public:
  explicit JsonLines(const fs::path& path) : out_(path, std::ios::trunc) {
    if (!out_) throw Error("cannot write " + path.string());
  }
  void write(const json& j) {
    out_ << j.dump() << '\n';
    out_.flush();
  }

 private:
  std::ofstream out_;
};

int run_federated(const RunConfig& cfg, const Inputs& in, const fs::path& dir, std::ostream& os) {
  const auto partition = make_partition(cfg.experiment.partition, in.train.labels);
  wire::write_json_atomic(dir / kPartitionFile,
                          partition_to_json(cfg.experiment.partition, partition));
  JsonLines history(dir / kHistoryFile);
  auto result = run_experiment(cfg.experiment, in.train, in.test, [&](const RoundEval& e) {
    history.write(round_eval_to_json(e));
    spdlog::info("{} round {}: accuracy {:.4f} macro-F1 {:.4f} AUROC {:.4f} ({:.0f} s)", cfg.name,
                 e.round, e.accuracy, e.macro_f1, e.auroc, e.wall_seconds);
  });
  wire::write_json_atomic(dir / kWeightsFile, wire::weights_file(result.final_weights));
  wire::write_json_atomic(dir / kRoundsFile, rounds_json(result.server_history));
  const auto report = evaluate_model(result.final_weights, in.test, cfg.bootstrap);
  write_report(dir, report);
  os << cfg.name << ": " << result.server_history.size() << " rounds, accuracy "
     << fixed(report.accuracy, 4) << ", macro-F1 " << fixed(report.macro_f1, 4) << ", AUROC "
     << fixed(report.auroc, 4) << "\n";
  return kExitOk;
}

int run_centralized_cmd(const RunConfig& cfg, const Inputs& in, const fs::path& dir,
                        std::ostream& os) {
  JsonLines epochs(dir / kEpochsFile);
  CentralizedConfig cc{cfg.experiment.model, cfg.training, cfg.experiment.master_seed};
  const auto start = std::chrono::steady_clock::now();
  auto result = run_centralized(cc, in.train, [&](const EpochStats& s) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    json j{{"epoch", s.epoch}, {"mean_loss", s.mean_loss}, {"wall_seconds", elapsed.count()}};
    if (s.validation_accuracy) j["validation_accuracy"] = *s.validation_accuracy;
    epochs.write(j);
    spdlog::info("{} epoch {}: loss {:.5f}{}", cfg.name, s.epoch, s.mean_loss,
                 s.validation_accuracy ? fmt::format(" validation accuracy {:.4f}",
                                                     *s.validation_accuracy)
                                       : "");
  });
  wire::write_json_atomic(dir / kWeightsFile, wire::weights_file(result.training.weights));
  const auto report = evaluate_model(result.training.weights, in.test, cfg.bootstrap);
  write_report(dir, report);
  os << cfg.name << ": " << result.training.epochs_run << " epochs, accuracy "
     << fixed(report.accuracy, 4) << ", macro-F1 " << fixed(report.macro_f1, 4) << ", AUROC "
     << fixed(report.auroc, 4) << "\n";
  return kExitOk;
}

std::pair<std::string, int> parse_bind(const std::string& bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw ConfigError("--bind expects host:port, got '" + bind + "'");
  int port = 0;
  try {
    port = std::stoi(bind.substr(colon + 1));
  } catch (const std::exception&) {
    throw ConfigError("--bind expects host:port, got '" + bind + "'");
  }
  if (port < 0 || port > 65535) throw ConfigError("port out of range in '" + bind + "'");
  return {bind.substr(0, colon), port};
}

}  // namespace

std::vector<std::string> table_order() {
  return {"cml_mnist", "basic_fl", "imbalanced_fl", "skewed_fl", "imbalanced_skewed_fl"};
}

int cmd_prepare(const std::string& data_dir, const fs::path& out, std::ostream& os,
                std::ostream& err) {
  return guarded(err, [&] {
    if (data_dir.empty()) throw ConfigError("no data directory: pass --data-dir or set FEDROUND_DATA_DIR");
    const auto files = MnistFiles::in(data_dir);
    struct Expect {
      const char* role;
      fs::path path;
      std::uint32_t magic;
      std::size_t count;
    };
    const Expect expected[] = {
        {"train_images", files.train_images, kIdxImagesMagic, kMnistTrainCount},
        {"train_labels", files.train_labels, kIdxLabelsMagic, kMnistTrainCount},
        {"test_images", files.test_images, kIdxImagesMagic, kMnistTestCount},
        {"test_labels", files.test_labels, kIdxLabelsMagic, kMnistTestCount},
    };
    json manifest{{"artifact", "fedround"}, {"version", FEDROUND_VERSION}, {"files", json::array()}};
    for (const auto& e : expected) {
      const std::string name = e.path.string();
      if (!fs::is_regular_file(e.path)) throw FormatError(name + ": missing");
      IdxTensor t;
      try {
        t = load_idx(e.path);
      } catch (const FormatError& ex) {
        throw FormatError(name + ": " + ex.what());
      }
      if (t.magic != e.magic) throw FormatError(name + ": unexpected magic number");
      if (t.dims.empty() || t.dims[0] != e.count) {
        throw FormatError(name + ": expected " + std::to_string(e.count) + " items");
      }
      if (e.magic == kIdxImagesMagic && (t.dims.size() != 3 || t.dims[1] != 28 || t.dims[2] != 28)) {
        throw FormatError(name + ": expected 28x28 images");
      }
      if (e.magic == kIdxLabelsMagic &&
          std::any_of(t.data.begin(), t.data.end(), [](std::uint8_t y) { return y > 9; })) {
        throw FormatError(name + ": label outside 0..9");
      }
      json entry = file_entry(e.role, e.path);
      entry["count"] = e.count;
      manifest["files"].push_back(entry);
    }
    if (!out.empty()) wire::write_json_atomic(out, manifest, 2);
    os << manifest.dump(2) << "\n";
    return kExitOk;
  });
}

int cmd_partition(const CommonArgs& args, std::ostream& os, std::ostream& err) {
  return guarded(err, [&] {
    const auto cfg = load(args);
    if (cfg.kind != RunKind::kFederated) throw ConfigError("partition needs a federated config");
    const auto in = load_inputs(cfg, args.data_dir);
    const auto partition = make_partition(cfg.experiment.partition, in.train.labels);
    const auto j = partition_to_json(cfg.experiment.partition, partition);
    if (!args.out.empty()) wire::write_json_atomic(args.out, j);
    for (const auto& [id, idx] : partition.shards) {
      std::vector<std::size_t> per_class(static_cast<std::size_t>(in.train.n_classes), 0);
      for (auto i : idx) ++per_class[static_cast<std::size_t>(in.train.labels[i])];
      os << id << ": " << idx.size() << " samples; per class";
      for (auto c : per_class) os << ' ' << c;
      os << "\n";
    }
    return kExitOk;
  });
}

int cmd_run(const CommonArgs& args, std::ostream& os, std::ostream& err) {
  return guarded(err, [&] {
    const auto cfg = load(args);
    const auto dir = run_dir(args, cfg);
    const auto in = load_inputs(cfg, args.data_dir);
    fs::create_directories(dir);
    json outputs{{"metrics", kMetricsFile}, {"confusion", kConfusionFile}, {"weights", kWeightsFile}};
    if (cfg.kind == RunKind::kFederated) {
      outputs["history"] = kHistoryFile;
      outputs["partition"] = kPartitionFile;
      outputs["rounds"] = kRoundsFile;
    } else {
      outputs["epochs"] = kEpochsFile;
    }
    fs::remove(dir / kMetricsFile);
    wire::write_json_atomic(dir / kManifestFile, manifest_json(cfg, in, outputs), 2);
    spdlog::info("{}: writing to {}", cfg.name, dir.string());
    return cfg.kind == RunKind::kFederated ? run_federated(cfg, in, dir, os)
                                           : run_centralized_cmd(cfg, in, dir, os);
  });
}

int cmd_serve(const ServeArgs& args, std::ostream& os, std::ostream& err) {
  return guarded(err, [&] {
    const auto cfg = load(args.common);
    if (cfg.kind != RunKind::kFederated) throw ConfigError("serve needs a federated config");
    const auto [host, port] = parse_bind(args.bind);
    const auto& ex = cfg.experiment;
    RoundServer rounds(ServerConfig{client_ids(ex.partition.n_clients()), ex.model,
                                    init_seed_for(ex.master_seed), ex.aggregation, ex.max_rounds});
    HttpServerOptions options;
    options.host = host;
    options.port = port;
    options.watchdog_timeout = ex.network.watchdog_timeout;
    HttpRoundServer http(rounds, options);
    const int bound = http.start();
    os << "serving " << cfg.name << " on " << host << ":" << bound << " for " << ex.max_rounds
       << " rounds\n"
       << std::flush;
    while (!rounds.finished()) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    std::this_thread::sleep_for(std::chrono::milliseconds(args.linger_ms));
    http.stop();

    const auto final_weights = *rounds.get_weights().weights;
    if (!args.common.out.empty()) {
      fs::create_directories(args.common.out);
      wire::write_json_atomic(args.common.out / kWeightsFile, wire::weights_file(final_weights));
      wire::write_json_atomic(args.common.out / kRoundsFile, rounds_json(rounds.history()));
    }
    os << "finished " << rounds.history().size() << " rounds\n";
    return kExitOk;
  });
}

int cmd_client(const ClientArgs& args, std::ostream& os, std::ostream& err) {
  return guarded(err, [&] {
    const auto cfg = load(args.common);
    if (cfg.kind != RunKind::kFederated) throw ConfigError("client needs a federated config");
    if (args.server_url.empty()) throw ConfigError("--server-url is required");
    if (args.client_id.empty()) throw ConfigError("--client-id is required");
    const auto in = load_inputs(cfg, args.common.data_dir);
    const Partition partition =
        args.partition.empty() ? make_partition(cfg.experiment.partition, in.train.labels)
                               : partition_from_json(wire::read_json(args.partition));
    auto it = partition.shards.find(args.client_id);
    if (it == partition.shards.end()) {
      throw ConfigError("client id '" + args.client_id + "' is not in the partition");
    }
    const Dataset shard = in.train.subset(it->second);
    const auto& ex = cfg.experiment;
    HttpEndpoint endpoint(args.server_url, args.client_id, ex.model);
    ClientOptions options;
    options.poll_interval = cfg.poll_interval.value_or(options.poll_interval);
    options.retry = ex.network.retry;
    options.base_seed = ex.master_seed;
    options.evaluation_set = &in.test;
    const auto log = client_loop(args.client_id, endpoint, shard, ex.client_training, ex.max_rounds,
                                 options);
    if (!args.common.out.empty()) {
      json rounds = json::array();
      for (const auto& r : log.rounds) {
        json j{{"round", r.round}, {"n_samples", r.n_samples}, {"accepted", r.accepted},
               {"train_seconds", r.train_seconds}};
        if (r.rejection) j["rejection"] = std::string(to_string(*r.rejection));
        if (r.global_accuracy) j["global_accuracy"] = *r.global_accuracy;
        rounds.push_back(j);
      }
      wire::write_json_atomic(args.common.out, json{{"client_id", log.client_id}, {"rounds", rounds}});
    }
    os << args.client_id << ": contributed to "
       << std::count_if(log.rounds.begin(), log.rounds.end(), [](const auto& r) { return r.accepted; })
       << " rounds\n";
    return kExitOk;
  });
}

int cmd_report(const ReportArgs& args, std::ostream& os, std::ostream& err) {
  return guarded(err, [&] {
    if (args.run_dirs.empty()) throw ConfigError("report needs at least one run directory");
    struct Run {
      std::string name;
      MetricsReport report;
    };
    std::vector<Run> runs;
    for (const auto& dir : args.run_dirs) {
      const auto metrics = dir / kMetricsFile;
      if (!fs::is_regular_file(metrics)) throw FormatError("missing report file " + metrics.string());
      std::string name = dir.filename().string();
      if (name.empty()) name = dir.parent_path().filename().string();
      if (fs::is_regular_file(dir / kManifestFile)) {
        name = wire::read_json(dir / kManifestFile).value("name", name);
      }
      try {
        runs.push_back({name, report_from_json(wire::read_json(metrics))});
      } catch (const nlohmann::json::exception& e) {
        throw FormatError(metrics.string() + ": " + e.what());
      }
    }
    const auto order = table_order();
    auto rank = [&](const std::string& n) {
      return static_cast<std::size_t>(std::find(order.begin(), order.end(), n) - order.begin());
    };
    std::stable_sort(runs.begin(), runs.end(), [&](const Run& a, const Run& b) {
      const auto ra = rank(a.name), rb = rank(b.name);
      return ra != rb ? ra < rb : (ra == order.size() && a.name < b.name);
    });
    std::vector<ComparisonRow> rows;
    for (const auto& r : runs) rows.push_back(comparison_row(r.name, r.report));

    json j{{"rows", comparison_to_json(rows)}, {"runs", json::array()}};
    for (const auto& r : runs) j["runs"].push_back({{"name", r.name}, {"metrics", report_to_json(r.report)}});
    if (!args.out.empty()) wire::write_json_atomic(args.out, j, 2);
    if (args.json) {
      os << j.dump(2) << "\n";
      return kExitOk;
    }
    os << render_comparison(rows, args.precision);
    for (const auto& r : runs) os << "\n" << r.name << "\n" << render_confusion(r.report.confusion);
    return kExitOk;
  });
}

}  // namespace fedround::cli
