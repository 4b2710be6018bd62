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

#include "fedround/client.h"

#include <algorithm>
#include <thread>

#include <spdlog/spdlog.h>

#include "fedround/errors.h"
#include "fedround/network.h"
#include "fedround/rng.h"

namespace fedround {
namespace {

template <typename F>
auto with_retry(const RetryPolicy& policy, std::stop_token stop, const char* what, F&& call) {
  auto backoff = policy.initial_backoff;
  for (std::size_t attempt = 1;; ++attempt) {
    try {
      return call();
    } catch (const TransportError& e) {
      if (attempt >= policy.max_attempts || stop.stop_requested()) {
        throw TransportError(std::string(what) + ": giving up after " + std::to_string(attempt) +
                             " attempts: " + e.what());
      }
      spdlog::warn("{} failed (attempt {}): {}; retrying in {} ms", what, attempt, e.what(),
                   backoff.count());
      std::this_thread::sleep_for(backoff);
      backoff = std::min(backoff * 2, policy.max_backoff);
    }
  }
}

}  // namespace

std::uint64_t InProcessEndpoint::get_round() {
  server_.touch(client_id_);
  return server_.get_round();
}

WeightsSnapshot InProcessEndpoint::get_weights() { return server_.get_weights(); }

PutResult InProcessEndpoint::put_weights(const ClientUpdate& update) {
  return server_.put_weights(update);
}

ClientLog client_loop(const std::string& client_id, ServerEndpoint& server, const Dataset& shard,
                      const TrainingConfig& config, std::size_t max_rounds,
                      const ClientOptions& options, std::stop_token stop) {
  ClientLog log{client_id, {}};
  if (max_rounds == 0) return log;
  if (shard.size() == 0) throw ParameterError("client_loop: empty shard");

  std::optional<std::uint64_t> participated;
  while (!stop.stop_requested()) {
    const auto round = with_retry(options.retry, stop, "GET /round", [&] { return server.get_round(); });
    if (round >= max_rounds) break;
    if (participated && *participated == round) {
      std::this_thread::sleep_for(options.poll_interval);
      continue;
    }

    const auto snapshot =
        with_retry(options.retry, stop, "GET /weight", [&] { return server.get_weights(); });
    if (snapshot.round >= max_rounds) break;
    ClientRoundRecord rec;
    rec.round = snapshot.round;
    if (options.evaluation_set) rec.global_accuracy = accuracy(*snapshot.weights, *options.evaluation_set);

    TrainingConfig round_config = config;
    round_config.shuffle_seed = client_round_seed(options.base_seed, client_id, snapshot.round);
    const auto t0 = std::chrono::steady_clock::now();
    auto trained = train_local(*snapshot.weights, shard, round_config);
    rec.train_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rec.n_samples = trained.n_samples;

    ClientUpdate update{client_id, snapshot.round, std::move(trained.weights), trained.n_samples};
    const auto result =
        with_retry(options.retry, stop, "PUT /weight", [&] { return server.put_weights(update); });
    rec.accepted = result.accepted;
    rec.rejection = result.reason;
    // An already_participated answer means an earlier attempt of this PUT
    // landed before the connection failed; either way this round is done.
    if (result.accepted || result.reason == Rejection::kAlreadyParticipated) {
      participated = snapshot.round;
    }
    if (result.reason == Rejection::kUnknownClient || result.reason == Rejection::kShapeMismatch) {
      throw ConsistencyError(client_id + ": server refused update permanently (" +
                             std::string(to_string(*result.reason)) + ")");
    }
    if (!result.accepted) {
      spdlog::info("{}: round {} update rejected ({})", client_id, snapshot.round,
                   to_string(*result.reason));
    }
    log.rounds.push_back(std::move(rec));
  }
  return log;
}

}  // namespace fedround
