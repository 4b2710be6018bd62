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

#ifndef FEDROUND_PROTOCOL_H_
#define FEDROUND_PROTOCOL_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fedround/fedavg.h"
#include "fedround/model.h"

namespace fedround {

struct ServerConfig {
  std::vector<std::string> expected_clients;
  ModelSpec model_spec;
  std::uint64_t init_seed = 0;
  AggregationMode aggregation_mode = AggregationMode::kSampleWeighted;
  std::size_t max_rounds = 1;
};

enum class Rejection { kStaleRound, kAlreadyParticipated, kUnknownClient, kShapeMismatch };

std::string_view to_string(Rejection r);
std::optional<Rejection> parse_rejection(std::string_view text);

struct PutResult {
  bool accepted = false;
  std::optional<Rejection> reason;
  bool aggregated = false;  // this update closed the round
};

// The round tag always belongs to the weights it travels with.
struct WeightsSnapshot {
  std::uint64_t round = 0;
  std::shared_ptr<const WeightVector> weights;
};

struct RoundRecord {
  std::uint64_t round = 0;                // the round that was closed
  std::vector<std::string> participants;  // ascending
  std::chrono::system_clock::time_point aggregated_at;
};

// Server side of the round protocol. Holds the global model and collects one
// update per expected client; the update that completes the set triggers
// FedAVG, installs the result and advances the round, all under the same
// lock as every read. Once max_rounds is reached the server stays readable
// and rejects further updates as stale.
class RoundServer {
 public:
  using AggregationHook = std::function<void(const WeightsSnapshot&)>;

  explicit RoundServer(ServerConfig config);

  const ServerConfig& config() const { return config_; }

  std::uint64_t get_round() const;
  WeightsSnapshot get_weights() const;
  PutResult put_weights(const ClientUpdate& update);

  bool finished() const;
  std::vector<RoundRecord> history() const;
  std::set<std::string> pending_clients() const;

  // Clients that still owe an update for the open round and have not been
  // heard from (a PUT or a touch()) within `timeout` of the later of their
  // last contact and the round opening. Empty once max_rounds is reached.
  std::vector<std::string> silent_clients(std::chrono::steady_clock::duration timeout) const;
  void touch(const std::string& client_id);

  // Invoked after each aggregation, inside the critical section, with the new
  // snapshot. Must not call back into the server.
  void set_aggregation_hook(AggregationHook hook);

 private:
  ServerConfig config_;
  std::set<std::string> expected_;
  mutable std::mutex mu_;
  std::uint64_t round_ = 0;
  std::shared_ptr<const WeightVector> global_;
  std::map<std::string, ClientUpdate> pending_;
  std::vector<RoundRecord> history_;
  std::map<std::string, std::chrono::steady_clock::time_point> last_seen_;
  std::chrono::steady_clock::time_point round_opened_;
  AggregationHook hook_;
};

}  // namespace fedround

#endif  // FEDROUND_PROTOCOL_H_
