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

#ifndef FEDROUND_SIMULATOR_H_
#define FEDROUND_SIMULATOR_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "fedround/client.h"
#include "fedround/dataset.h"
#include "fedround/errors.h"
#include "fedround/fedavg.h"
#include "fedround/model.h"
#include "fedround/partition.h"
#include "fedround/protocol.h"
#include "fedround/trainer.h"

namespace fedround {

enum class ExecutionMode { kInProcess, kNetworked };

std::string_view to_string(ExecutionMode mode);
ExecutionMode parse_execution_mode(std::string_view text);

struct NetworkOptions {
  std::string host = "127.0.0.1";
  std::chrono::milliseconds poll_interval{10};
  // The run is aborted when the round does not advance for this long.
  std::chrono::milliseconds watchdog_timeout{std::chrono::minutes(10)};
  RetryPolicy retry;
  // Fault drills: a listed client stops after this many rounds.
  std::map<std::string, std::size_t> client_round_limits;
};

struct ExperimentConfig {
  std::string name;
  PartitionScheme partition;
  ModelSpec model;
  TrainingConfig client_training;  // shuffle_seed is derived per client and round
  AggregationMode aggregation = AggregationMode::kSampleWeighted;
  std::size_t max_rounds = 1;
  std::size_t eval_every = 1;
  std::uint64_t master_seed = 0;
  ExecutionMode mode = ExecutionMode::kInProcess;
  std::size_t threads = 0;  // in-process client parallelism; 0 = hardware
  NetworkOptions network;

  void validate() const;
};

// Seed of the round-0 global weights for a master seed.
std::uint64_t init_seed_for(std::uint64_t master_seed);

struct RoundEval {
  std::uint64_t round = 0;
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  double auroc = 0.0;
  double wall_seconds = 0.0;  // since the run started
};

struct RunHistory {
  std::vector<RoundEval> evals;  // strictly increasing rounds
  WeightVector final_weights;
  std::vector<RoundRecord> server_history;
  std::vector<ClientLog> client_logs;  // networked mode only
  double total_seconds = 0.0;
};

// A client failed to train; the run stops at `round`.
class RunDivergedError : public DivergenceError {
 public:
  RunDivergedError(const std::string& client, std::uint64_t round, const DivergenceError& cause);
  std::uint64_t round() const { return round_; }
  const std::string& client() const { return client_; }

 private:
  std::string client_;
  std::uint64_t round_;
};

using RoundObserver = std::function<void(const RoundEval&)>;

// Rounds evaluated: the first, every eval_every-th, and the last.
bool is_eval_round(std::uint64_t round, std::size_t eval_every, std::size_t max_rounds);

RoundEval evaluate_round(std::uint64_t round, const WeightVector& weights, const Dataset& test);

// Runs a whole federated experiment on `train` (partitioned per cfg) and
// scores the global model on `test`. Dispatches on cfg.mode.
RunHistory run_experiment(const ExperimentConfig& cfg, const Dataset& train, const Dataset& test,
                          const RoundObserver& observer = {});

// Every client trains from the current global weights with seed
// client_round_seed(master_seed, id, round), then updates go through a
// RoundServer exactly as in networked mode.
RunHistory run_in_process(const ExperimentConfig& cfg, const Dataset& train, const Dataset& test,
                          const RoundObserver& observer = {});

// Starts an HTTP round server on a loopback port and one client_loop thread
// per shard. Throws WatchdogTimeout if the round stalls, TransportError if
// the port cannot be bound or a client exhausts its retries.
RunHistory run_networked(const ExperimentConfig& cfg, const Dataset& train, const Dataset& test,
                         const RoundObserver& observer = {});

struct CentralizedConfig {
  ModelSpec model;
  TrainingConfig training;
  std::uint64_t master_seed = 0;
};

struct CentralizedResult {
  TrainResult training;
  std::vector<EpochStats> epochs;
  double total_seconds = 0.0;
};

// Baseline: one model trained on the pooled training set, starting from the
// same init_seed_for(master_seed) weights a federated run would use.
CentralizedResult run_centralized(const CentralizedConfig& cfg, const Dataset& train,
                                  const std::function<void(const EpochStats&)>& observer = {});

nlohmann::json round_eval_to_json(const RoundEval& e);
RoundEval round_eval_from_json(const nlohmann::json& j);

}  // namespace fedround

#endif  // FEDROUND_SIMULATOR_H_
