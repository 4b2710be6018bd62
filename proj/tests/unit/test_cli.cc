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

#include <arpa/inet.h>
#include <gtest/gtest.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "fedround/idx.h"
#include "fedround/report.h"
#include "fedround/wire.h"
#include "fedround_cli/commands.h"
#include "fedround_cli/config.h"

namespace fedround::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("fedround_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Config, KeyValueSyntax) {
  const auto kv = parse_key_values("# comment\n a = 1 \n\nb=two # trailing\n");
  EXPECT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv.at("a"), "1");
  EXPECT_EQ(kv.at("b"), "two");
  EXPECT_THROW(parse_key_values("just words\n"), ConfigError);
}

TEST(Config, UnknownKeysAndBadValuesAreNamed) {
  try {
    resolve_config({{"learning_rte", "0.1"}});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("learning_rte"), std::string::npos);
  }
  EXPECT_THROW(resolve_config({{"epochs", "five"}}), ConfigError);
  EXPECT_THROW(resolve_config({{"mode", "cloud"}}), ConfigError);
  EXPECT_THROW(resolve_config({{"fractions", "0.5,0.4"}, {"partition", "fractions"}}), ConfigError);
}

TEST(Config, BundledConfigsResolve) {
  for (const char* name : {"cml_mnist", "basic_fl", "imbalanced_fl", "skewed_fl",
                           "imbalanced_skewed_fl", "synth_fractions"}) {
    const auto cfg = load_config(name, {});
    EXPECT_EQ(cfg.name, name);
    EXPECT_EQ(cfg.experiment.model.layer_sizes.size(), 3u);
  }
  const auto cml = load_config("cml_mnist", {});
  EXPECT_EQ(cml.kind, RunKind::kCentralized);
  EXPECT_EQ(cml.training.batch_size, 32u);
  ASSERT_TRUE(cml.training.early_stopping.has_value());
  EXPECT_EQ(cml.training.early_stopping->patience, 10u);

  const auto skewed = load_config("skewed_fl", {});
  EXPECT_EQ(skewed.experiment.max_rounds, 3000u);
  EXPECT_EQ(skewed.experiment.client_training.batch_size, 10u);
  EXPECT_EQ(skewed.experiment.client_training.epochs, 5u);
  EXPECT_EQ(skewed.experiment.partition.name(), "skewed");

  const auto basic = load_config("basic_fl", {{"max_rounds", "5"}});
  EXPECT_EQ(basic.experiment.max_rounds, 5u);
}

TEST(Config, DescribeIsAFixedPoint) {
  for (const char* name : {"cml_mnist", "imbalanced_skewed_fl", "synth_fractions"}) {
    const auto cfg = load_config(name, {});
    const auto described = describe_config(cfg);
    EXPECT_EQ(describe_config(resolve_config(described)), described);
  }
}

TEST(Config, SeedDrivesDerivedSeedsUnlessPinned) {
  const auto a = load_config("synth_fractions", {{"seed", "1"}});
  const auto b = load_config("synth_fractions", {{"seed", "2"}});
  EXPECT_NE(a.experiment.partition.seed, b.experiment.partition.seed);
  EXPECT_NE(a.synth.seed, b.synth.seed);
  EXPECT_NE(a.bootstrap.seed, b.bootstrap.seed);
  const auto pinned = load_config("synth_fractions", {{"seed", "2"}, {"partition_seed", "9"}});
  EXPECT_EQ(pinned.experiment.partition.seed, 9u);
}

TEST(Config, MissingConfigIsAnError) { EXPECT_THROW(locate_config("no_such_config"), ConfigError); }

CommonArgs synth_args(const fs::path& out, std::map<std::string, std::string> extra = {}) {
  CommonArgs a;
  a.config = "synth_fractions";
  a.out = out;
  a.overrides = {{"max_rounds", "4"}, {"bootstrap_k", "50"}, {"synth.n_samples", "800"}};
  for (auto& [k, v] : extra) a.overrides[k] = v;
  return a;
}

TEST(Run, WritesACompleteRunDirectory) {
  const auto dir = scratch("run");
  std::ostringstream os, err;
  ASSERT_EQ(cmd_run(synth_args(dir), os, err), kExitOk) << err.str();
  for (const char* f : {kManifestFile, kHistoryFile, kWeightsFile, kMetricsFile, kConfusionFile,
                        kPartitionFile, kRoundsFile}) {
    EXPECT_TRUE(fs::is_regular_file(dir / f)) << f;
  }
  const auto manifest = wire::read_json(dir / kManifestFile);
  EXPECT_EQ(manifest.at("name"), "synth_fractions");
  EXPECT_EQ(manifest.at("config").at("max_rounds"), "4");
  EXPECT_TRUE(manifest.at("seeds").contains("master"));
  EXPECT_TRUE(manifest.at("seeds").contains("partition"));
  const auto report = report_from_json(wire::read_json(dir / kMetricsFile));
  EXPECT_EQ(report.n_classes, 2);
  EXPECT_TRUE(report.auprc.has_value());
  EXPECT_TRUE(report.ci.contains("auprc"));
  std::ifstream history(dir / kHistoryFile);
  std::size_t lines = 0;
  for (std::string line; std::getline(history, line);) ++lines;
  EXPECT_EQ(lines, 4u);
}

TEST(Run, RerunsAreIdenticalAndSeedOverridesMatter) {
  const auto a = scratch("rerun_a"), b = scratch("rerun_b"), c = scratch("rerun_c");
  std::ostringstream os, err;
  ASSERT_EQ(cmd_run(synth_args(a), os, err), kExitOk);
  ASSERT_EQ(cmd_run(synth_args(b), os, err), kExitOk);
  ASSERT_EQ(cmd_run(synth_args(c, {{"seed", "31337"}}), os, err), kExitOk);
  EXPECT_EQ(slurp(a / kManifestFile), slurp(b / kManifestFile));
  EXPECT_EQ(slurp(a / kMetricsFile), slurp(b / kMetricsFile));
  EXPECT_EQ(slurp(a / kWeightsFile), slurp(b / kWeightsFile));
  EXPECT_NE(wire::read_json(a / kManifestFile).at("seeds"), wire::read_json(c / kManifestFile).at("seeds"));
  EXPECT_NE(slurp(a / kWeightsFile), slurp(c / kWeightsFile));
}

TEST(Run, ConfigErrorsExitTwo) {
  std::ostringstream os, err;
  EXPECT_EQ(cmd_run(synth_args(scratch("bad"), {{"bogus_key", "1"}}), os, err), kExitUsage);
  EXPECT_NE(err.str().find("bogus_key"), std::string::npos);
  CommonArgs mnist;
  mnist.config = "basic_fl";
  mnist.data_dir = scratch("empty_data").string();
  mnist.out = scratch("empty_data") / "out";
  EXPECT_EQ(cmd_run(mnist, os, err), kExitUsage);
  EXPECT_FALSE(fs::exists(mnist.out));
}

TEST(Run, DivergenceExitsThreeWithTheRound) {
  std::ostringstream os, err;
  EXPECT_EQ(cmd_run(synth_args(scratch("diverge"), {{"learning_rate", "1e300"}}), os, err), kExitRuntime);
  EXPECT_NE(err.str().find("round"), std::string::npos);
}

TEST(Run, CentralizedSynthRun) {
  const auto dir = scratch("central");
  std::ostringstream os, err;
  CommonArgs a = synth_args(dir, {{"kind", "centralized"}, {"early_stopping", "true"}, {"epochs", "40"}});
  ASSERT_EQ(cmd_run(a, os, err), kExitOk) << err.str();
  EXPECT_TRUE(fs::is_regular_file(dir / kEpochsFile));
  EXPECT_TRUE(fs::is_regular_file(dir / kMetricsFile));
}

// Fake finished runs with the given names, in the given order.
std::vector<fs::path> fake_runs(const std::vector<std::string>& names) {
  std::vector<fs::path> dirs;
  const auto base = scratch("report");
  const std::vector<int> y{0, 1, 0, 1, 1, 0};
  Matrix p(6, 2);
  p << 0.8, 0.2, 0.3, 0.7, 0.6, 0.4, 0.45, 0.55, 0.1, 0.9, 0.7, 0.3;
  const auto report = evaluate_predictions(p, y, {20, 1});
  for (const auto& n : names) {
    const auto dir = base / ("dir_" + n);
    fs::create_directories(dir);
    wire::write_json_atomic(dir / kManifestFile, json{{"name", n}});
    wire::write_json_atomic(dir / kMetricsFile, report_to_json(report));
    dirs.push_back(dir);
  }
  return dirs;
}

TEST(Report, OneRunOneRow) {
  ReportArgs args;
  args.run_dirs = fake_runs({"cml_mnist"});
  std::ostringstream os, err;
  ASSERT_EQ(cmd_report(args, os, err), kExitOk);
  const auto text = os.str();
  EXPECT_EQ(parse_comparison(text.substr(0, text.find("\n\n") + 1)).size(), 1u);
}

TEST(Report, RowsFollowTheStandardOrder) {
  ReportArgs args;
  args.run_dirs = fake_runs({"imbalanced_skewed_fl", "zeta", "basic_fl", "skewed_fl", "cml_mnist",
                             "imbalanced_fl", "alpha"});
  args.json = true;
  std::ostringstream os, err;
  ASSERT_EQ(cmd_report(args, os, err), kExitOk);
  std::vector<std::string> names;
  for (const auto& row : comparison_from_json(json::parse(os.str()).at("rows"))) names.push_back(row.experiment);
  EXPECT_EQ(names, (std::vector<std::string>{"cml_mnist", "basic_fl", "imbalanced_fl", "skewed_fl",
                                             "imbalanced_skewed_fl", "alpha", "zeta"}));
}

TEST(Report, JsonAndTextAgreeExactly) {
  ReportArgs args;
  args.run_dirs = fake_runs({"basic_fl", "skewed_fl"});
  args.precision = -1;
  std::ostringstream text, js, err;
  ASSERT_EQ(cmd_report(args, text, err), kExitOk);
  args.json = true;
  ASSERT_EQ(cmd_report(args, js, err), kExitOk);
  const auto t = text.str();
  const auto from_text = parse_comparison(t.substr(0, t.find("\n\n") + 1));
  const auto from_json = comparison_from_json(json::parse(js.str()).at("rows"));
  ASSERT_EQ(from_text.size(), from_json.size());
  for (std::size_t i = 0; i < from_text.size(); ++i) {
    EXPECT_EQ(from_text[i].experiment, from_json[i].experiment);
    EXPECT_EQ(from_text[i].auroc, from_json[i].auroc);
    EXPECT_EQ(from_text[i].auroc_ci.lo, from_json[i].auroc_ci.lo);
    EXPECT_EQ(from_text[i].auroc_ci.hi, from_json[i].auroc_ci.hi);
    EXPECT_EQ(from_text[i].f1, from_json[i].f1);
    EXPECT_EQ(from_text[i].f1_ci.lo, from_json[i].f1_ci.lo);
    EXPECT_EQ(from_text[i].f1_ci.hi, from_json[i].f1_ci.hi);
    EXPECT_EQ(from_text[i].auprc, from_json[i].auprc);
  }
}

TEST(Report, MissingReportExitsTwo) {
  ReportArgs args;
  args.run_dirs = {scratch("no_metrics")};
  std::ostringstream os, err;
  EXPECT_EQ(cmd_report(args, os, err), kExitUsage);
  EXPECT_NE(err.str().find(kMetricsFile), std::string::npos);
}

// Full-size MNIST-shaped files filled with a pattern.
class PrepareFixture : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(scratch("prepare"));
    write(*dir_, 60000, 10000);
  }
  static void TearDownTestSuite() {
    fs::remove_all(*dir_);
    delete dir_;
  }
  static void write(const fs::path& dir, std::uint32_t train, std::uint32_t test) {
    const auto files = MnistFiles::in(dir);
    for (auto [path, n, images] : {std::tuple{files.train_images, train, true},
                                   std::tuple{files.train_labels, train, false},
                                   std::tuple{files.test_images, test, true},
                                   std::tuple{files.test_labels, test, false}}) {
      IdxTensor t;
      t.magic = images ? kIdxImagesMagic : kIdxLabelsMagic;
      t.dims = images ? std::vector<std::uint32_t>{n, 28, 28} : std::vector<std::uint32_t>{n};
      t.data.resize(t.element_count());
      for (std::size_t i = 0; i < t.data.size(); ++i) t.data[i] = static_cast<std::uint8_t>(images ? i % 256 : i % 10);
      write_idx(path, t);
    }
  }
  static fs::path* dir_;
};
fs::path* PrepareFixture::dir_ = nullptr;

TEST_F(PrepareFixture, ValidDirectoryListsFourFilesDeterministically) {
  std::ostringstream a, b, err;
  const auto out = *dir_ / "digests.json";
  ASSERT_EQ(cmd_prepare(dir_->string(), out, a, err), kExitOk) << err.str();
  ASSERT_EQ(cmd_prepare(dir_->string(), {}, b, err), kExitOk);
  EXPECT_EQ(a.str(), b.str());
  const auto m = wire::read_json(out);
  ASSERT_EQ(m.at("files").size(), 4u);
  for (const auto& f : m.at("files")) EXPECT_EQ(f.at("sha256").get<std::string>().size(), 64u);
}

TEST_F(PrepareFixture, TruncatedFileIsNamed) {
  const auto bad = scratch("prepare_bad");
  for (const auto& e : fs::directory_iterator(*dir_)) fs::copy_file(e.path(), bad / e.path().filename());
  const auto images = MnistFiles::in(bad).train_images;
  fs::resize_file(images, fs::file_size(images) - 100);
  std::ostringstream os, err;
  EXPECT_EQ(cmd_prepare(bad.string(), {}, os, err), kExitUsage);
  EXPECT_NE(err.str().find(images.filename().string()), std::string::npos);
  fs::remove(images);
  EXPECT_EQ(cmd_prepare(bad.string(), {}, os, err), kExitUsage);
  fs::remove_all(bad);
}

TEST_F(PrepareFixture, WrongCountIsRejected) {
  const auto small = scratch("prepare_small");
  write(small, 100, 10000);
  std::ostringstream os, err;
  EXPECT_EQ(cmd_prepare(small.string(), {}, os, err), kExitUsage);
  EXPECT_NE(err.str().find("60000"), std::string::npos);
  fs::remove_all(small);
}

TEST(Partition, PrintsShardsAndWritesJson) {
  const auto dir = scratch("partition");
  CommonArgs a = synth_args(dir / "partition.json");
  std::ostringstream os, err;
  ASSERT_EQ(cmd_partition(a, os, err), kExitOk) << err.str();
  const auto p = partition_from_json(wire::read_json(dir / "partition.json"));
  EXPECT_EQ(p.shards.size(), 3u);
  EXPECT_NE(os.str().find("client_00"), std::string::npos);
}

int free_port() {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  socklen_t len = sizeof(addr);
  ::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr));
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  ::close(fd);
  return ntohs(addr.sin_port);
}

TEST(ServeAndClient, SeparateProcessesReproduceTheSimulator) {
  const auto dir = scratch("serve");
  std::ostringstream os, err;
  ASSERT_EQ(cmd_run(synth_args(dir / "reference"), os, err), kExitOk) << err.str();

  const int port = free_port();
  ServeArgs serve;
  serve.common = synth_args(dir / "server", {{"poll_interval_ms", "2"}});
  serve.bind = "127.0.0.1:" + std::to_string(port);
  serve.linger_ms = 300;
  int serve_rc = -1;
  std::ostringstream serve_out, serve_err;
  std::thread server([&] { serve_rc = cmd_serve(serve, serve_out, serve_err); });

  std::vector<std::thread> clients;
  std::vector<int> rc(3, -1);
  for (std::size_t c = 0; c < 3; ++c) {
    clients.emplace_back([&, c] {
      ClientArgs a;
      a.common = synth_args(dir / ("client" + std::to_string(c) + ".json"), {{"poll_interval_ms", "2"}});
      a.server_url = "http://127.0.0.1:" + std::to_string(port);
      a.client_id = "client_0" + std::to_string(c);
      std::ostringstream o, e;
      a.common.overrides["bootstrap_k"] = "50";
      // Give the server a moment to bind; the client retries anyway.
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
      rc[c] = cmd_client(a, o, e);
    });
  }
  for (auto& t : clients) t.join();
  server.join();
  EXPECT_EQ(serve_rc, kExitOk) << serve_err.str();
  for (int r : rc) EXPECT_EQ(r, kExitOk);
  EXPECT_EQ(wire::parse_weights_file(wire::read_json(dir / "server" / kWeightsFile)),
            wire::parse_weights_file(wire::read_json(dir / "reference" / kWeightsFile)));
}

#ifdef FEDROUND_CLI_PATH
int run_binary(const std::string& args) {
  const int status = std::system((std::string(FEDROUND_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_binary("--help"), 0);
  EXPECT_EQ(run_binary("frobnicate"), kExitUsage);
  EXPECT_EQ(run_binary("run"), kExitUsage);
  EXPECT_EQ(run_binary("run --config synth_fractions --bogus=1"), kExitUsage);
  EXPECT_EQ(run_binary("run --config synth_fractions stray"), kExitUsage);
  const auto dir = scratch("binary");
  EXPECT_EQ(run_binary("run --config synth_fractions --rounds 2 --bootstrap_k=20 --out " + (dir / "ok").string()), 0);
  EXPECT_EQ(run_binary("run --config synth_fractions --rounds 2 --learning_rate=1e300 --out " +
                       (dir / "nan").string()),
            kExitRuntime);
  EXPECT_EQ(run_binary("report " + (dir / "ok").string()), 0);
  EXPECT_EQ(run_binary("report " + (dir / "nan").string()), kExitUsage);
}
#endif

TEST(Mnist, ShortBasicRunWhenDataIsAvailable) {
  const char* data = std::getenv("FEDROUND_DATA_DIR");
  if (!data || !*data) GTEST_SKIP() << "FEDROUND_DATA_DIR not set";
  const auto dir = scratch("mnist_basic");
  CommonArgs a;
  a.config = "basic_fl";
  a.data_dir = data;
  a.out = dir;
  a.overrides = {{"max_rounds", "5"}, {"bootstrap_k", "10"}};
  std::ostringstream os, err;
  ASSERT_EQ(cmd_run(a, os, err), kExitOk) << err.str();
  const auto manifest = wire::read_json(dir / kManifestFile);
  EXPECT_EQ(manifest.at("inputs").size(), 4u);
  std::ifstream history(dir / kHistoryFile);
  std::string line;
  ASSERT_TRUE(std::getline(history, line));
  EXPECT_EQ(json::parse(line).at("round"), 1);
}

}  // namespace
}  // namespace fedround::cli
