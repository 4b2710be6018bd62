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

#include <gtest/gtest.h>

#include "fedround/errors.h"
#include "fedround/network.h"
#include "fedround/partition.h"
#include "fedround/simulator.h"
#include "fedround/synth.h"

namespace fedround {
namespace {

struct Data {
  Dataset train, test;
};

const Data& synth_data() {
  static const Data d = [] {
    SynthConfig c;
    c.n_samples = 600;
    c.n_features = 6;
    c.class_separation = 2.0;
    c.positive_fraction = 0.3;
    c.seed = 5;
    Data out;
    out.train = synth_binary(c);
    c.n_samples = 200;
    c.seed = 6;
    out.test = synth_binary(c);
    return out;
  }();
  return d;
}

ExperimentConfig small_experiment(std::size_t rounds, PartitionVariant variant = IidFixed{3, 80}) {
  ExperimentConfig cfg;
  cfg.name = "unit";
  cfg.partition = {std::move(variant), 12};
  cfg.model.layer_sizes = {6, 5, 2};
  cfg.client_training.batch_size = 8;
  cfg.client_training.epochs = 2;
  cfg.client_training.learning_rate = 0.1;
  cfg.max_rounds = rounds;
  cfg.eval_every = 2;
  cfg.master_seed = 77;
  cfg.network.poll_interval = std::chrono::milliseconds(1);
  cfg.network.watchdog_timeout = std::chrono::seconds(20);
  cfg.threads = 2;
  return cfg;
}

TEST(Simulator, EvalRoundsAreFirstMultiplesAndLast) {
  std::vector<std::uint64_t> got;
  for (std::uint64_t r = 1; r <= 23; ++r)
    if (is_eval_round(r, 10, 23)) got.push_back(r);
  EXPECT_EQ(got, (std::vector<std::uint64_t>{1, 10, 20, 23}));
}

TEST(Simulator, InProcessRunRecordsEveryRound) {
  const auto& d = synth_data();
  auto cfg = small_experiment(5);
  std::vector<std::uint64_t> observed;
  const auto h = run_in_process(cfg, d.train, d.test, [&](const RoundEval& e) { observed.push_back(e.round); });
  EXPECT_EQ(observed, (std::vector<std::uint64_t>{1, 2, 4, 5}));
  ASSERT_EQ(h.evals.size(), 4u);
  ASSERT_EQ(h.server_history.size(), 5u);
  for (const auto& rec : h.server_history) EXPECT_EQ(rec.participants, client_ids(3));
  EXPECT_EQ(h.evals.back().accuracy, evaluate_round(5, h.final_weights, d.test).accuracy);
}

TEST(Simulator, InProcessIsDeterministicAndSeedSensitive) {
  const auto& d = synth_data();
  auto cfg = small_experiment(3);
  const auto a = run_in_process(cfg, d.train, d.test);
  cfg.threads = 1;
  EXPECT_EQ(run_in_process(cfg, d.train, d.test).final_weights, a.final_weights);
  cfg.master_seed = 78;
  EXPECT_NE(run_in_process(cfg, d.train, d.test).final_weights, a.final_weights);
}

TEST(Simulator, NetworkedMatchesInProcessBitForBit) {
  const auto& d = synth_data();
  for (auto variant : {PartitionVariant{IidFixed{3, 80}}, PartitionVariant{Fractions{{0.5, 0.3, 0.2}}}}) {
    auto cfg = small_experiment(6, variant);
    const auto local = run_in_process(cfg, d.train, d.test);
    cfg.mode = ExecutionMode::kNetworked;
    const auto remote = run_experiment(cfg, d.train, d.test);
    EXPECT_EQ(remote.final_weights, local.final_weights);
    ASSERT_EQ(remote.evals.size(), local.evals.size());
    for (std::size_t i = 0; i < local.evals.size(); ++i) {
      EXPECT_EQ(remote.evals[i].round, local.evals[i].round);
      EXPECT_EQ(remote.evals[i].accuracy, local.evals[i].accuracy);
    }
    EXPECT_EQ(remote.client_logs.size(), 3u);
  }
}

TEST(Simulator, DivergingClientStopsTheRun) {
  const auto& d = synth_data();
  auto cfg = small_experiment(4);
  cfg.client_training.learning_rate = 1e300;
  EXPECT_THROW(run_in_process(cfg, d.train, d.test), RunDivergedError);
  cfg.mode = ExecutionMode::kNetworked;
  try {
    run_experiment(cfg, d.train, d.test);
    FAIL() << "expected divergence";
  } catch (const RunDivergedError& e) {
    EXPECT_FALSE(e.client().empty());
  }
}

TEST(Simulator, WatchdogFiresWhenAClientGoesQuiet) {
  const auto& d = synth_data();
  auto cfg = small_experiment(4);
  cfg.mode = ExecutionMode::kNetworked;
  cfg.network.watchdog_timeout = std::chrono::milliseconds(300);
  cfg.network.client_round_limits["client_01"] = 1;
  EXPECT_THROW(run_experiment(cfg, d.train, d.test), WatchdogTimeout);
}

TEST(Simulator, ConfigValidation) {
  auto cfg = small_experiment(3);
  cfg.eval_every = 0;
  EXPECT_THROW(cfg.validate(), ParameterError);
  cfg = small_experiment(3);
  cfg.max_rounds = 0;
  EXPECT_THROW(cfg.validate(), ParameterError);
  EXPECT_EQ(parse_execution_mode("networked"), ExecutionMode::kNetworked);
  EXPECT_EQ(to_string(ExecutionMode::kInProcess), "in_process");
  EXPECT_THROW(parse_execution_mode("cloud"), ParameterError);
}

TEST(Simulator, CentralizedRunStopsEarlyAndKeepsBestWeights) {
  const auto& d = synth_data();
  CentralizedConfig cc;
  cc.model.layer_sizes = {6, 5, 2};
  cc.training.batch_size = 16;
  cc.training.epochs = 500;
  cc.training.learning_rate = 0.1;
  cc.training.early_stopping = EarlyStopping{5, 1e-4, 0.1};
  cc.master_seed = 3;
  std::size_t epochs_seen = 0;
  const auto r = run_centralized(cc, d.train, [&](const EpochStats&) { ++epochs_seen; });
  EXPECT_EQ(r.epochs.size(), epochs_seen);
  EXPECT_EQ(r.training.epochs_run, epochs_seen);
  EXPECT_LT(r.training.epochs_run, 500u);
  EXPECT_EQ(r.training.n_samples, 540u);
  EXPECT_GT(accuracy(r.training.weights, d.test), 0.7);
}

TEST(Simulator, RoundEvalJsonRoundTrip) {
  const RoundEval e{12, 0.91, 0.9, 0.99, 3.5};
  const auto back = round_eval_from_json(nlohmann::json::parse(round_eval_to_json(e).dump()));
  EXPECT_EQ(back.round, e.round);
  EXPECT_EQ(back.accuracy, e.accuracy);
  EXPECT_EQ(back.macro_f1, e.macro_f1);
  EXPECT_EQ(back.auroc, e.auroc);
  EXPECT_EQ(back.wall_seconds, e.wall_seconds);
}

}  // namespace
}  // namespace fedround
