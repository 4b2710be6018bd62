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

#include "fedround/simulator.h"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include <spdlog/spdlog.h>

#include "fedround/http.h"
#include "fedround/report.h"
#include "fedround/rng.h"

namespace fedround {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Shards {
  std::vector<std::string> ids;
  std::vector<Dataset> data;
};

Shards make_shards(const ExperimentConfig& cfg, const Dataset& train) {
  const auto partition = make_partition(cfg.partition, train.labels);
  Shards s;
  for (const auto& [id, idx] : partition.shards) {
    s.ids.push_back(id);
    s.data.push_back(train.subset(idx));
  }
  return s;
}

ServerConfig server_config(const ExperimentConfig& cfg, const std::vector<std::string>& ids) {
  return {ids, cfg.model, init_seed_for(cfg.master_seed), cfg.aggregation, cfg.max_rounds};
}

// Runs fn(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> workers;
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::string_view to_string(ExecutionMode mode) {
  return mode == ExecutionMode::kNetworked ? "networked" : "in_process";
}

ExecutionMode parse_execution_mode(std::string_view text) {
  if (text == "in_process") return ExecutionMode::kInProcess;
  if (text == "networked") return ExecutionMode::kNetworked;
  throw ParameterError("unknown mode '" + std::string(text) + "'");
}

void ExperimentConfig::validate() const {
  if (max_rounds == 0) throw ParameterError("max_rounds must be at least 1");
  if (eval_every == 0 || eval_every > max_rounds) {
    throw ParameterError("eval_every must lie in [1, max_rounds]");
  }
  model.validate();
  partition.validate();
}

std::uint64_t init_seed_for(std::uint64_t master_seed) {
  return derive_seed(master_seed, {hash_string("init")});
}

RunDivergedError::RunDivergedError(const std::string& client, std::uint64_t round,
                                   const DivergenceError& cause)
    : DivergenceError("client " + client + " diverged in round " + std::to_string(round) + ": " +
                          cause.what(),
                      cause.epoch()),
      client_(client),
      round_(round) {}

bool is_eval_round(std::uint64_t round, std::size_t eval_every, std::size_t max_rounds) {
  return round == 1 || round % eval_every == 0 || round == max_rounds;
}

RoundEval evaluate_round(std::uint64_t round, const WeightVector& weights, const Dataset& test) {
  const auto report = evaluate_model(weights, test, {0, 0});
  return {round, report.accuracy, report.macro_f1, report.auroc, 0.0};
}

RunHistory run_experiment(const ExperimentConfig& cfg, const Dataset& train, const Dataset& test,
                          const RoundObserver& observer) {
  return cfg.mode == ExecutionMode::kNetworked ? run_networked(cfg, train, test, observer)
                                               : run_in_process(cfg, train, test, observer);
}

RunHistory run_in_process(const ExperimentConfig& cfg, const Dataset& train, const Dataset& test,
                          const RoundObserver& observer) {
  cfg.validate();
  const auto t0 = Clock::now();
  const auto shards = make_shards(cfg, train);
  RoundServer server(server_config(cfg, shards.ids));
  RunHistory history;

  std::vector<ClientUpdate> updates(shards.ids.size());
  for (std::uint64_t round = 0; round < cfg.max_rounds; ++round) {
    const auto snapshot = server.get_weights();
    parallel_for(shards.ids.size(), cfg.threads, [&](std::size_t c) {
      TrainingConfig tc = cfg.client_training;
      tc.shuffle_seed = client_round_seed(cfg.master_seed, shards.ids[c], round);
      try {
        auto trained = train_local(*snapshot.weights, shards.data[c], tc);
        updates[c] = {shards.ids[c], round, std::move(trained.weights), trained.n_samples};
      } catch (const DivergenceError& e) {
        throw RunDivergedError(shards.ids[c], round, e);
      }
    });
    for (const auto& u : updates) {
      const auto result = server.put_weights(u);
      if (!result.accepted) {
        throw ConsistencyError("in-process update rejected: " + std::string(to_string(*result.reason)));
      }
    }
    const std::uint64_t closed = round + 1;
    if (is_eval_round(closed, cfg.eval_every, cfg.max_rounds)) {
      auto eval = evaluate_round(closed, *server.get_weights().weights, test);
      eval.wall_seconds = seconds_since(t0);
      if (observer) observer(eval);
      history.evals.push_back(eval);
    }
  }
  history.final_weights = *server.get_weights().weights;
  history.server_history = server.history();
  history.total_seconds = seconds_since(t0);
  return history;
}

RunHistory run_networked(const ExperimentConfig& cfg, const Dataset& train, const Dataset& test,
                         const RoundObserver& observer) {
  cfg.validate();
  const auto t0 = Clock::now();
  const auto shards = make_shards(cfg, train);
  RoundServer server(server_config(cfg, shards.ids));

  std::mutex mu;
  std::condition_variable cv;
  std::deque<WeightsSnapshot> to_evaluate;
  server.set_aggregation_hook([&](const WeightsSnapshot& s) {
    if (!is_eval_round(s.round, cfg.eval_every, cfg.max_rounds)) return;
    {
      std::lock_guard lock(mu);
      to_evaluate.push_back(s);
    }
    cv.notify_all();
  });

  HttpServerOptions http_options;
  http_options.host = cfg.network.host;
  HttpRoundServer http(server, http_options);
  const int port = http.start();
  const std::string url = "http://" + cfg.network.host + ":" + std::to_string(port);
  spdlog::info("{}: round server on {} with {} clients", cfg.name, url, shards.ids.size());

  const std::size_t n = shards.ids.size();
  std::vector<ClientLog> logs(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> finished_clients{0};
  std::atomic<std::size_t> failed_clients{0};
  std::vector<std::jthread> clients;
  for (std::size_t c = 0; c < n; ++c) {
    clients.emplace_back([&, c](std::stop_token stop) {
      try {
        HttpEndpoint endpoint(url, shards.ids[c], cfg.model);
        ClientOptions options;
        options.poll_interval = cfg.network.poll_interval;
        options.retry = cfg.network.retry;
        options.base_seed = cfg.master_seed;
        std::size_t rounds = cfg.max_rounds;
        if (auto it = cfg.network.client_round_limits.find(shards.ids[c]);
            it != cfg.network.client_round_limits.end()) {
          rounds = std::min(rounds, it->second);
        }
        logs[c] = client_loop(shards.ids[c], endpoint, shards.data[c], cfg.client_training, rounds,
                              options, stop);
      } catch (...) {
        errors[c] = std::current_exception();
        ++failed_clients;
      }
      ++finished_clients;
      cv.notify_all();
    });
  }

  auto shutdown = [&] {
    for (auto& t : clients) t.request_stop();
    for (auto& t : clients) t.join();
    http.stop();
  };

  RunHistory history;
  auto drain = [&](std::unique_lock<std::mutex>& lock) {
    while (!to_evaluate.empty()) {
      auto snap = std::move(to_evaluate.front());
      to_evaluate.pop_front();
      lock.unlock();
      auto eval = evaluate_round(snap.round, *snap.weights, test);
      eval.wall_seconds = seconds_since(t0);
      if (observer) observer(eval);
      history.evals.push_back(eval);
      lock.lock();
    }
  };

  std::uint64_t last_round = 0;
  auto last_progress = Clock::now();
  // `mu` is never held while calling into the server: the aggregation hook
  // takes it from inside the server's own lock.
  while (true) {
    {
      std::unique_lock lock(mu);
      cv.wait_for(lock, std::chrono::milliseconds(100));
      drain(lock);
    }
    if (finished_clients.load() == n || failed_clients.load() > 0) break;
    const auto round = server.get_round();
    if (round != last_round) {
      last_round = round;
      last_progress = Clock::now();
    } else if (Clock::now() - last_progress > cfg.network.watchdog_timeout) {
      const auto silent = server.silent_clients(cfg.network.watchdog_timeout);
      const auto pending = server.pending_clients();
      shutdown();
      std::string missing;
      for (const auto& id : shards.ids) {
        if (!pending.contains(id)) missing += (missing.empty() ? "" : ", ") + id;
      }
      throw WatchdogTimeout("round " + std::to_string(round) + " made no progress for " +
                            std::to_string(cfg.network.watchdog_timeout.count()) +
                            " ms; waiting on: " + missing + " (" + std::to_string(silent.size()) +
                            " silent)");
    }
  }
  shutdown();
  for (std::size_t c = 0; c < n; ++c) {
    if (!errors[c]) continue;
    try {
      std::rethrow_exception(errors[c]);
    } catch (const DivergenceError& e) {
      throw RunDivergedError(shards.ids[c], server.get_round(), e);
    }
  }
  if (server.get_round() < cfg.max_rounds) {
    throw WatchdogTimeout("clients stopped at round " + std::to_string(server.get_round()) +
                          " of " + std::to_string(cfg.max_rounds));
  }
  {
    std::unique_lock lock(mu);
    drain(lock);
  }
  history.final_weights = *server.get_weights().weights;
  history.server_history = server.history();
  history.client_logs = std::move(logs);
  history.total_seconds = seconds_since(t0);
  return history;
}

CentralizedResult run_centralized(const CentralizedConfig& cfg, const Dataset& train,
                                  const std::function<void(const EpochStats&)>& observer) {
  const auto t0 = Clock::now();
  CentralizedResult out;
  TrainingConfig tc = cfg.training;
  tc.shuffle_seed = derive_seed(cfg.master_seed, {hash_string("centralized")});
  out.training = train_local(init_weights(cfg.model, init_seed_for(cfg.master_seed)), train, tc,
                             [&](const EpochStats& s) {
                               out.epochs.push_back(s);
                               if (observer) observer(s);
                             });
  out.total_seconds = seconds_since(t0);
  return out;
}

nlohmann::json round_eval_to_json(const RoundEval& e) {
  return {{"round", e.round},
          {"accuracy", e.accuracy},
          {"macro_f1", e.macro_f1},
          {"auroc", e.auroc},
          {"wall_seconds", e.wall_seconds}};
}

RoundEval round_eval_from_json(const nlohmann::json& j) {
  try {
    return {j.at("round").get<std::uint64_t>(), j.at("accuracy").get<double>(),
            j.value("macro_f1", 0.0), j.value("auroc", 0.0), j.value("wall_seconds", 0.0)};
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("history record: ") + e.what());
  }
}

}  // namespace fedround
