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

#include "fedround/wire.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fedround/errors.h"

namespace fedround::wire {

nlohmann::json weights_array(const WeightVector& w) { return w.values; }

std::vector<double> parse_weights_array(const nlohmann::json& j) {
  if (!j.is_array()) throw FormatError("weights must be a JSON array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw FormatError("weights must contain only numbers");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw FormatError("weights must be finite");
    out.push_back(d);
  }
  return out;
}

nlohmann::json round_body(std::uint64_t round) { return {{"round", round}}; }

nlohmann::json weights_body(const WeightsSnapshot& snapshot) {
  return {{"round", snapshot.round}, {"weights", weights_array(*snapshot.weights)}};
}

WeightsSnapshot parse_weights_body(const nlohmann::json& j, const ModelSpec& spec) {
  try {
    WeightsSnapshot s;
    s.round = j.at("round").get<std::uint64_t>();
    auto w = std::make_shared<WeightVector>(WeightVector{spec, parse_weights_array(j.at("weights"))});
    w->validate();
    s.weights = std::move(w);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("weights body: ") + e.what());
  } catch (const ShapeError& e) {
    throw FormatError(std::string("weights body: ") + e.what());
  }
}

nlohmann::json put_body(const ClientUpdate& update) {
  return {{"client_id", update.client_id},
          {"round", update.round},
          {"n_samples", update.n_samples},
          {"weights", weights_array(update.weights)}};
}

ClientUpdate parse_put_body(const nlohmann::json& j, const ModelSpec& spec) {
  try {
    ClientUpdate u;
    u.client_id = j.at("client_id").get<std::string>();
    u.round = j.at("round").get<std::uint64_t>();
    if (!j.at("n_samples").is_number_unsigned() || j.at("n_samples").get<std::size_t>() == 0) {
      throw FormatError("n_samples must be a positive integer");
    }
    u.n_samples = j.at("n_samples").get<std::size_t>();
    u.weights = {spec, parse_weights_array(j.at("weights"))};
    return u;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("put body: ") + e.what());
  }
}

nlohmann::json put_result_body(const PutResult& result) {
  if (result.accepted) return {{"accepted", true}};
  return {{"accepted", false}, {"reason", to_string(*result.reason)}};
}

PutResult parse_put_result_body(const nlohmann::json& j) {
  try {
    PutResult r;
    r.accepted = j.at("accepted").get<bool>();
    if (!r.accepted) {
      r.reason = parse_rejection(j.at("reason").get<std::string>());
      if (!r.reason) throw FormatError("put result: unknown rejection reason");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("put result: ") + e.what());
  }
}

nlohmann::json weights_file(const WeightVector& w) {
  return {{"layer_sizes", w.spec.layer_sizes}, {"weights", weights_array(w)}};
}

WeightVector parse_weights_file(const nlohmann::json& j) {
  try {
    WeightVector w;
    w.spec.layer_sizes = j.at("layer_sizes").get<std::vector<std::size_t>>();
    w.spec.validate();
    w.values = parse_weights_array(j.at("weights"));
    w.validate();
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("weights file: ") + e.what());
  } catch (const ShapeError& e) {
    throw FormatError(std::string("weights file: ") + e.what());
  }
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw FormatError("cannot write " + tmp.string());
    out << text;
    if (!out) throw FormatError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& j, int indent) {
  write_text_atomic(path, j.dump(indent) + "\n");
}

}  // namespace fedround::wire
