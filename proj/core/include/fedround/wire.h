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

#ifndef FEDROUND_WIRE_H_
#define FEDROUND_WIRE_H_

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>

#include "fedround/fedavg.h"
#include "fedround/model.h"
#include "fedround/protocol.h"

namespace fedround::wire {

// JSON bodies of the round protocol:
//   GET /round  -> {"round": r}
//   GET /weight -> {"round": r, "weights": [...]}
//   PUT /weight <- {"client_id": id, "round": r, "n_samples": n, "weights": [...]}
//               -> {"accepted": true} | {"accepted": false, "reason": "..."}
// Weights are a flat array in WeightVector layout. Doubles are written in
// shortest round-trip form, so decode(encode(w)) == w bit for bit.

nlohmann::json weights_array(const WeightVector& w);
// Throws FormatError unless `j` is an array of finite numbers.
std::vector<double> parse_weights_array(const nlohmann::json& j);

nlohmann::json round_body(std::uint64_t round);
nlohmann::json weights_body(const WeightsSnapshot& snapshot);
WeightsSnapshot parse_weights_body(const nlohmann::json& j, const ModelSpec& spec);

nlohmann::json put_body(const ClientUpdate& update);
// Shape is not checked here; the server decides shape_mismatch.
ClientUpdate parse_put_body(const nlohmann::json& j, const ModelSpec& spec);

nlohmann::json put_result_body(const PutResult& result);
PutResult parse_put_result_body(const nlohmann::json& j);

// Weights file: {"layer_sizes": [...], "weights": [...]}.
nlohmann::json weights_file(const WeightVector& w);
WeightVector parse_weights_file(const nlohmann::json& j);

nlohmann::json read_json(const std::filesystem::path& path);
// Writes to a temporary sibling and renames it into place.
void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& j, int indent = -1);
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace fedround::wire

#endif  // FEDROUND_WIRE_H_
