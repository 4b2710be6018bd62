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

#ifndef FEDROUND_CLIENT_H_
#define FEDROUND_CLIENT_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "fedround/dataset.h"
#include "fedround/protocol.h"
#include "fedround/trainer.h"

namespace fedround {

// The three server calls a client needs. Implementations throw
// TransportError for failures that are worth retrying.
class ServerEndpoint {
 public:
  virtual ~ServerEndpoint() = default;
  virtual std::uint64_t get_round() = 0;
  virtual WeightsSnapshot get_weights() = 0;
  virtual PutResult put_weights(const ClientUpdate& update) = 0;
};

// Direct calls into a RoundServer in the same process.
class InProcessEndpoint : public ServerEndpoint {
 public:
  InProcessEndpoint(RoundServer& server, std::string client_id)
      : server_(server), client_id_(std::move(client_id)) {}
  std::uint64_t get_round() override;
  WeightsSnapshot get_weights() override;
  PutResult put_weights(const ClientUpdate& update) override;

 private:
  RoundServer& server_;
  std::string client_id_;
};

struct RetryPolicy {
  std::size_t max_attempts = 8;
  std::chrono::milliseconds initial_backoff{100};
  std::chrono::milliseconds max_backoff{5000};
};

struct ClientOptions {
  std::chrono::milliseconds poll_interval{500};
  RetryPolicy retry;
  // Scores each downloaded global model on this set when present.
  const Dataset* evaluation_set = nullptr;
  // Derives the per-round training seed: client_round_seed(base, id, round).
  std::uint64_t base_seed = 0;
};

struct ClientRoundRecord {
  std::uint64_t round = 0;
  std::size_t n_samples = 0;
  bool accepted = false;
  std::optional<Rejection> rejection;
  std::optional<double> global_accuracy;  // of the downloaded weights
  double train_seconds = 0.0;
};

struct ClientLog {
  std::string client_id;
  std::vector<ClientRoundRecord> rounds;
};

// Participation loop: poll the round; if this client already contributed to
// it, sleep and poll again; otherwise download the global weights, score
// them, train locally, and upload. Returns once the round reaches
// max_rounds or `stop` is requested. Every endpoint call is retried with
// exponential backoff; TransportError escapes after the retry budget.
ClientLog client_loop(const std::string& client_id, ServerEndpoint& server, const Dataset& shard,
                      const TrainingConfig& config, std::size_t max_rounds,
                      const ClientOptions& options, std::stop_token stop = {});

}  // namespace fedround

#endif  // FEDROUND_CLIENT_H_
