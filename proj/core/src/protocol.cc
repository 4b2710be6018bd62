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

#include "fedround/protocol.h"

#include <algorithm>

#include "fedround/errors.h"

namespace fedround {

std::string_view to_string(Rejection r) {
  switch (r) {
    case Rejection::kStaleRound:
      return "stale_round";
    case Rejection::kAlreadyParticipated:
      return "already_participated";
    case Rejection::kUnknownClient:
      return "unknown_client";
    case Rejection::kShapeMismatch:
      return "shape_mismatch";
  }
  return "unknown";
}

std::optional<Rejection> parse_rejection(std::string_view text) {
  for (auto r : {Rejection::kStaleRound, Rejection::kAlreadyParticipated,
                 Rejection::kUnknownClient, Rejection::kShapeMismatch}) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

RoundServer::RoundServer(ServerConfig config) : config_(std::move(config)) {
  if (config_.expected_clients.empty()) throw ParameterError("server: no expected clients");
  if (config_.max_rounds == 0) throw ParameterError("server: max_rounds must be positive");
  expected_ = {config_.expected_clients.begin(), config_.expected_clients.end()};
  if (expected_.size() != config_.expected_clients.size()) {
    throw ParameterError("server: duplicate expected client id");
  }
  global_ = std::make_shared<const WeightVector>(init_weights(config_.model_spec, config_.init_seed));
  round_opened_ = std::chrono::steady_clock::now();
  for (const auto& id : expected_) last_seen_[id] = round_opened_;
}

std::uint64_t RoundServer::get_round() const {
  std::lock_guard lock(mu_);
  return round_;
}

WeightsSnapshot RoundServer::get_weights() const {
  std::lock_guard lock(mu_);
  return {round_, global_};
}

bool RoundServer::finished() const {
  std::lock_guard lock(mu_);
  return round_ >= config_.max_rounds;
}

PutResult RoundServer::put_weights(const ClientUpdate& update) {
  std::lock_guard lock(mu_);
  if (!expected_.contains(update.client_id)) return {false, Rejection::kUnknownClient, false};
  last_seen_[update.client_id] = std::chrono::steady_clock::now();
  if (update.round != round_ || round_ >= config_.max_rounds) {
    return {false, Rejection::kStaleRound, false};
  }
  if (pending_.contains(update.client_id)) return {false, Rejection::kAlreadyParticipated, false};
  if (update.weights.spec != config_.model_spec ||
      update.weights.size() != config_.model_spec.parameter_count()) {
    return {false, Rejection::kShapeMismatch, false};
  }
  if (update.n_samples == 0) throw ParameterError("server: update with n_samples 0");

  pending_.emplace(update.client_id, update);
  if (pending_.size() < expected_.size()) return {true, std::nullopt, false};

  std::vector<ClientUpdate> updates;
  updates.reserve(pending_.size());
  RoundRecord record;
  record.round = round_;
  for (auto& [id, u] : pending_) {
    record.participants.push_back(id);
    updates.push_back(std::move(u));
  }
  global_ = std::make_shared<const WeightVector>(fed_avg(updates, config_.aggregation_mode));
  pending_.clear();
  ++round_;
  round_opened_ = std::chrono::steady_clock::now();
  record.aggregated_at = std::chrono::system_clock::now();
  history_.push_back(std::move(record));
  if (hook_) hook_({round_, global_});
  return {true, std::nullopt, true};
}

std::vector<RoundRecord> RoundServer::history() const {
  std::lock_guard lock(mu_);
  return history_;
}

std::set<std::string> RoundServer::pending_clients() const {
  std::lock_guard lock(mu_);
  std::set<std::string> out;
  for (const auto& [id, _] : pending_) out.insert(id);
  return out;
}

std::vector<std::string> RoundServer::silent_clients(
    std::chrono::steady_clock::duration timeout) const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  if (round_ >= config_.max_rounds) return out;
  const auto now = std::chrono::steady_clock::now();
  for (const auto& [id, t] : last_seen_) {
    if (pending_.contains(id)) continue;
    if (now - std::max(t, round_opened_) > timeout) out.push_back(id);
  }
  return out;
}

void RoundServer::touch(const std::string& client_id) {
  std::lock_guard lock(mu_);
  if (expected_.contains(client_id)) last_seen_[client_id] = std::chrono::steady_clock::now();
}

void RoundServer::set_aggregation_hook(AggregationHook hook) {
  std::lock_guard lock(mu_);
  hook_ = std::move(hook);
}

}  // namespace fedround
