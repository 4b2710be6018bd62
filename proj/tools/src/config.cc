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

#include "fedround_cli/config.h"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "fedround/rng.h"

#ifndef FEDROUND_SOURCE_CONFIG_DIR
#define FEDROUND_SOURCE_CONFIG_DIR ""
#endif
#ifndef FEDROUND_INSTALL_CONFIG_DIR
#define FEDROUND_INSTALL_CONFIG_DIR ""
#endif

namespace fedround::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* want) {
  throw ConfigError("config key '" + key + "': expected " + want + ", got '" + value + "'");
}

template <typename T>
T parse_integer(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value, "an integer");
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value, "a number");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value, "true or false");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& value,
                          T (*one)(const std::string&, const std::string&)) {
  std::vector<T> out;
  for (const auto& item : split_list(value)) out.push_back(one(key, item));
  if (out.empty()) bad_value(key, value, "a comma-separated list");
  return out;
}

std::size_t parse_size(const std::string& k, const std::string& v) { return parse_integer<std::size_t>(k, v); }
int parse_int(const std::string& k, const std::string& v) { return parse_integer<int>(k, v); }

template <typename T>
std::string join(const std::vector<T>& values) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
  return out.str();
}

std::string real_text(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

// Values that depend on other keys; resolved after all keys are read.
struct PartitionKeys {
  std::string variant = "iid_fixed";
  std::size_t n_clients = 10;
  std::size_t per_client = 600;
  std::optional<std::vector<std::size_t>> sizes;
  std::optional<std::vector<int>> classes;
  std::vector<double> fractions{0.5, 0.3, 0.2};
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> synth_seed;
  std::optional<std::uint64_t> bootstrap_seed;
};

using Setter = std::function<void(RunConfig&, PartitionKeys&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    t["name"] = [](RunConfig& c, PartitionKeys&, auto&, auto& v) {
      c.name = v;
      c.experiment.name = v;
    };
    t["kind"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) {
      if (v == "federated") c.kind = RunKind::kFederated;
      else if (v == "centralized") c.kind = RunKind::kCentralized;
      else bad_value(k, v, "federated or centralized");
    };
    t["dataset"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) {
      if (v == "mnist") c.dataset = DatasetKind::kMnist;
      else if (v == "synth") c.dataset = DatasetKind::kSynth;
      else bad_value(k, v, "mnist or synth");
    };
    t["data_dir"] = [](RunConfig& c, PartitionKeys&, auto&, auto& v) { c.data_dir = v; };
    t["synth.n_samples"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) { c.synth.n_samples = parse_size(k, v); };
    t["synth.n_features"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) { c.synth.n_features = parse_size(k, v); };
    t["synth.class_separation"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) { c.synth.class_separation = parse_real(k, v); };
    t["synth.positive_fraction"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) { c.synth.positive_fraction = parse_real(k, v); };
    t["synth.seed"] = [](RunConfig&, PartitionKeys& p, auto& k, auto& v) {
      p.synth_seed = parse_integer<std::uint64_t>(k, v);
    };
    t["synth.test_fraction"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) {
      c.synth_test_fraction = parse_real(k, v);
      if (!(c.synth_test_fraction > 0.0 && c.synth_test_fraction < 1.0)) bad_value(k, v, "a fraction in (0, 1)");
    };
    t["partition"] = [](RunConfig&, PartitionKeys& p, auto& k, auto& v) {
      static const std::set<std::string> ok{"iid_fixed", "imbalanced", "skewed", "imbalanced_skewed", "fractions"};
      if (!ok.contains(v)) bad_value(k, v, "iid_fixed, imbalanced, skewed, imbalanced_skewed or fractions");
      p.variant = v;
    };
    t["n_clients"] = [](RunConfig&, PartitionKeys& p, auto& k, auto& v) { p.n_clients = parse_size(k, v); };
    t["per_client"] = [](RunConfig&, PartitionKeys& p, auto& k, auto& v) { p.per_client = parse_size(k, v); };
    t["sizes"] = [](RunConfig&, PartitionKeys& p, auto& k, auto& v) { p.sizes = parse_list<std::size_t>(k, v, parse_size); };
    t["classes"] = [](RunConfig&, PartitionKeys& p, auto& k, auto& v) { p.classes = parse_list<int>(k, v, parse_int); };
    t["fractions"] = [](RunConfig&, PartitionKeys& p, auto& k, auto& v) { p.fractions = parse_list<double>(k, v, parse_real); };
    t["partition_seed"] = [](RunConfig&, PartitionKeys& p, auto& k, auto& v) { p.seed = parse_integer<std::uint64_t>(k, v); };
    t["layer_sizes"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) {
      c.experiment.model.layer_sizes = parse_list<std::size_t>(k, v, parse_size);
    };
    t["batch_size"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) { c.training.batch_size = parse_size(k, v); };
    t["epochs"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) { c.training.epochs = parse_size(k, v); };
    t["learning_rate"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) {
      c.training.learning_rate = parse_real(k, v);
      if (!(c.training.learning_rate > 0.0)) bad_value(k, v, "a positive number");
    };
    t["early_stopping"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) {
      if (parse_bool(k, v)) {
        if (!c.training.early_stopping) c.training.early_stopping = EarlyStopping{};
      } else {
        c.training.early_stopping.reset();
      }
    };
    auto es = [](RunConfig& c) -> EarlyStopping& {
      if (!c.training.early_stopping) c.training.early_stopping = EarlyStopping{};
      return *c.training.early_stopping;
    };
    t["patience"] = [es](RunConfig& c, PartitionKeys&, auto& k, auto& v) { es(c).patience = parse_size(k, v); };
    t["min_delta"] = [es](RunConfig& c, PartitionKeys&, auto& k, auto& v) { es(c).min_delta = parse_real(k, v); };
    t["validation_fraction"] = [es](RunConfig& c, PartitionKeys&, auto& k, auto& v) {
      es(c).validation_fraction = parse_real(k, v);
    };
    t["aggregation"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) {
      try {
        c.experiment.aggregation = parse_aggregation_mode(v);
      } catch (const ParameterError&) {
        bad_value(k, v, "sample_weighted or uniform");
      }
    };
    t["max_rounds"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) { c.experiment.max_rounds = parse_size(k, v); };
    t["eval_every"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) { c.experiment.eval_every = parse_size(k, v); };
    t["seed"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) {
      c.experiment.master_seed = parse_integer<std::uint64_t>(k, v);
    };
    t["mode"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) {
      try {
        c.experiment.mode = parse_execution_mode(v);
      } catch (const ParameterError&) {
        bad_value(k, v, "in_process or networked");
      }
    };
    t["threads"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) { c.experiment.threads = parse_size(k, v); };
    t["poll_interval_ms"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) {
      c.poll_interval = std::chrono::milliseconds(parse_size(k, v));
      c.experiment.network.poll_interval = *c.poll_interval;
    };
    t["watchdog_timeout_ms"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) {
      c.experiment.network.watchdog_timeout = std::chrono::milliseconds(parse_size(k, v));
    };
    t["bootstrap_k"] = [](RunConfig& c, PartitionKeys&, auto& k, auto& v) { c.bootstrap.resamples = parse_size(k, v); };
    t["bootstrap_seed"] = [](RunConfig&, PartitionKeys& p, auto& k, auto& v) {
      p.bootstrap_seed = parse_integer<std::uint64_t>(k, v);
    };
    return t;
  }();
  return table;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

std::vector<std::string> known_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

RunConfig resolve_config(const std::map<std::string, std::string>& values) {
  const auto& table = setters();
  RunConfig c;
  PartitionKeys p;
  for (const auto& [key, value] : values) {
    auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(c, p, key, value);
  }

  const std::uint64_t master = c.experiment.master_seed;
  c.synth.seed = p.synth_seed.value_or(derive_seed(master, {hash_string("synth")}));
  c.bootstrap.seed = p.bootstrap_seed.value_or(derive_seed(master, {hash_string("bootstrap")}));

  PartitionScheme scheme;
  scheme.seed = p.seed.value_or(derive_seed(master, {hash_string("partition")}));
  auto default_classes = [&](std::size_t n) {
    std::vector<int> cls;
    for (std::size_t i = 0; i < n; ++i) cls.push_back(static_cast<int>(i));
    return cls;
  };
  if (p.variant == "iid_fixed") {
    scheme.variant = IidFixed{p.n_clients, p.per_client};
  } else if (p.variant == "imbalanced") {
    scheme.variant = Imbalanced{p.sizes.value_or(default_imbalanced_sizes())};
  } else if (p.variant == "skewed") {
    scheme.variant = Skewed{p.classes.value_or(default_classes(p.n_clients)), p.per_client};
  } else if (p.variant == "imbalanced_skewed") {
    const auto sizes = p.sizes.value_or(default_imbalanced_sizes());
    scheme.variant = ImbalancedSkewed{p.classes.value_or(default_classes(sizes.size())), sizes};
  } else {
    scheme.variant = Fractions{p.fractions};
  }
  c.experiment.partition = scheme;
  c.experiment.client_training = c.training;
  try {
    if (c.kind == RunKind::kFederated) c.experiment.validate();
    c.experiment.model.validate();
    if (c.dataset == DatasetKind::kSynth) c.synth.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  return c;
}

std::map<std::string, std::string> describe_config(const RunConfig& c) {
  std::map<std::string, std::string> out;
  out["name"] = c.name;
  out["kind"] = c.kind == RunKind::kFederated ? "federated" : "centralized";
  out["dataset"] = c.dataset == DatasetKind::kMnist ? "mnist" : "synth";
  if (c.dataset == DatasetKind::kSynth) {
    out["synth.n_samples"] = std::to_string(c.synth.n_samples);
    out["synth.n_features"] = std::to_string(c.synth.n_features);
    out["synth.class_separation"] = real_text(c.synth.class_separation);
    out["synth.positive_fraction"] = real_text(c.synth.positive_fraction);
    out["synth.seed"] = std::to_string(c.synth.seed);
    out["synth.test_fraction"] = real_text(c.synth_test_fraction);
  }
  out["layer_sizes"] = join(c.experiment.model.layer_sizes);
  out["batch_size"] = std::to_string(c.training.batch_size);
  out["epochs"] = std::to_string(c.training.epochs);
  out["learning_rate"] = real_text(c.training.learning_rate);
  out["early_stopping"] = c.training.early_stopping ? "true" : "false";
  if (c.training.early_stopping) {
    out["patience"] = std::to_string(c.training.early_stopping->patience);
    out["min_delta"] = real_text(c.training.early_stopping->min_delta);
    out["validation_fraction"] = real_text(c.training.early_stopping->validation_fraction);
  }
  out["seed"] = std::to_string(c.experiment.master_seed);
  out["bootstrap_k"] = std::to_string(c.bootstrap.resamples);
  out["bootstrap_seed"] = std::to_string(c.bootstrap.seed);
  if (c.kind == RunKind::kFederated) {
    const auto& s = c.experiment.partition;
    out["partition"] = s.name();
    out["partition_seed"] = std::to_string(s.seed);
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, IidFixed>) {
            out["n_clients"] = std::to_string(v.n_clients);
            out["per_client"] = std::to_string(v.per_client);
          } else if constexpr (std::is_same_v<T, Imbalanced>) {
            out["sizes"] = join(v.sizes);
          } else if constexpr (std::is_same_v<T, Skewed>) {
            out["classes"] = join(v.classes);
            out["per_client"] = std::to_string(v.per_client);
          } else if constexpr (std::is_same_v<T, ImbalancedSkewed>) {
            out["classes"] = join(v.classes);
            out["sizes"] = join(v.sizes);
          } else {
            std::vector<std::string> f;
            for (double x : v.fractions) f.push_back(real_text(x));
            out["fractions"] = join(f);
          }
        },
        s.variant);
    out["aggregation"] = std::string(to_string(c.experiment.aggregation));
    out["max_rounds"] = std::to_string(c.experiment.max_rounds);
    out["eval_every"] = std::to_string(c.experiment.eval_every);
    out["mode"] = std::string(to_string(c.experiment.mode));
  }
  return out;
}

std::filesystem::path locate_config(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(name_or_path)) return name_or_path;
  std::vector<fs::path> dirs;
  if (const char* env = std::getenv("FEDROUND_CONFIG_DIR")) dirs.emplace_back(env);
  if (*FEDROUND_SOURCE_CONFIG_DIR) dirs.emplace_back(FEDROUND_SOURCE_CONFIG_DIR);
  if (*FEDROUND_INSTALL_CONFIG_DIR) dirs.emplace_back(FEDROUND_INSTALL_CONFIG_DIR);
  for (const auto& d : dirs) {
    for (const auto& candidate : {d / name_or_path, d / (name_or_path + ".conf")}) {
      if (fs::is_regular_file(candidate)) return candidate;
    }
  }
  throw ConfigError("config '" + name_or_path + "' not found");
}

RunConfig load_config(const std::string& name_or_path,
                      const std::map<std::string, std::string>& overrides) {
  const auto path = locate_config(name_or_path);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  auto values = parse_key_values(buf.str());
  for (const auto& [k, v] : overrides) values[k] = v;
  return resolve_config(values);
}

}  // namespace fedround::cli
