/*
 * SPDX-FileCopyrightText: Copyright 2026 The sttsca Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "sttsca/cli.hpp"
#include "sttsca/io.hpp"

namespace sttsca {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "sttsca");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("sttsca_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string out(const std::string& sub = "o") const { return (dir_ / sub).string(); }
  fs::path write_config(const std::string& text) const {
    const fs::path p = dir_ / "run.ini";
    std::ofstream(p) << text;
    return p;
  }
  fs::path dir_;
};

TEST_F(CliTest, TraceFullFlip) {
  const Result r = run({"--out", out(), "trace", "--old", "0000", "--new", "1111", "--width", "4", "--noise", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(fs::path(out()) / "trace.csv");
  const CurrentTrace t = read_trace_csv(f);
  EXPECT_NEAR(t.samples.head(30).mean(), 600e-6, 1e-12);
  EXPECT_NEAR(t.samples.tail(30).mean(), 300e-6, 1e-12);
  const auto meta = nlohmann::json::parse(slurp(fs::path(out()) / "trace.csv.meta.json"));
  EXPECT_EQ(meta["width"], 4);
  EXPECT_EQ(meta["artifact_version"], "1.0.0");
  EXPECT_TRUE(meta.contains("config_hash"));
  EXPECT_TRUE(fs::exists(fs::path(out()) / "effective_config.ini"));
}

TEST_F(CliTest, HexWords) {
  ASSERT_EQ(run({"--out", out("a"), "trace", "--old", "0x0", "--new", "0xF", "--width", "4", "--noise", "0"}).code, 0);
  ASSERT_EQ(run({"--out", out("b"), "trace", "--old", "0000", "--new", "1111", "--noise", "0"}).code, 0);
  EXPECT_EQ(slurp(fs::path(out("a")) / "trace.csv"), slurp(fs::path(out("b")) / "trace.csv"));
  EXPECT_EQ(run({"--out", out("c"), "trace", "--old", "0x0", "--new", "0xF"}).code, kExitInvariant);
}

TEST_F(CliTest, StatesContainsParityRow) {
  ASSERT_EQ(run({"--out", out(), "states", "--widths", "4..64", "--scheme", "parity1"}).code, 0);
  std::ifstream f(fs::path(out()) / "defense_matrix.csv");
  const auto rows = read_defense_matrix_csv(f);
  ASSERT_EQ(rows.size(), 61u);
  EXPECT_EQ(rows[0].width, 4);
  EXPECT_EQ(rows[0].states, 3);
  EXPECT_NEAR(rows[0].reduction_pct, 40.0, 1e-12);
}

TEST_F(CliTest, SweepTemperatureMonotone) {
  ASSERT_EQ(run({"--out", out(), "sweep", "--var", "temperature", "--range", "250:350:10", "--metric",
                 "write_latency"})
                .code,
            0);
  std::ifstream f(fs::path(out()) / "sweep.csv");
  const auto rows = read_csv_rows(f, "temperature,write_latency");
  ASSERT_EQ(rows.size(), 11u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(parse_double(rows[i][1]), parse_double(rows[i - 1][1]));
}

TEST_F(CliTest, McAndDeviceOutputs) {
  ASSERT_EQ(run({"--out", out(), "mc", "--count", "2000"}).code, 0);
  std::ifstream h(fs::path(out()) / "mc_write_histogram.csv");
  const Histogram hist = read_histogram_csv(h);
  std::size_t total = 0;
  for (auto c : hist.counts) total += c;
  EXPECT_EQ(total, 2000u);
  const auto tail = nlohmann::json::parse(slurp(fs::path(out()) / "mc_tail.json"));
  EXPECT_GT(tail["read"]["tail"]["ratio_max_to_mean"].get<double>(), tail["write"]["tail"]["ratio_max_to_mean"].get<double>());
  ASSERT_EQ(run({"--out", out(), "device"}).code, 0);
  const auto dev = nlohmann::json::parse(slurp(fs::path(out()) / "device.json"));
  EXPECT_NEAR(dev["delta"].get<double>(), 40.0, 1e-9);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"--config", (dir_ / "missing.ini").string(), "device"}).code, kExitMissingFile);
  EXPECT_EQ(run({"--config", write_config("[device\n").string(), "device"}).code, kExitParseError);
  EXPECT_EQ(run({"--config", write_config("[device]\nbogus = 1\n").string(), "device"}).code, kExitParseError);
  EXPECT_EQ(run({"--config", write_config("[device]\ntmr = -0.5\n").string(), "--out", out(), "device"}).code,
            kExitInvariant);
  const Result wf = run({"--config", write_config("[env]\nmagnetic_tamper_factor = 2.5\n").string(), "--out", out(),
                         "trace", "--old", "0000", "--new", "0100"});
  EXPECT_EQ(wf.code, kExitWriteFailure);
  EXPECT_NE(wf.err.find("bit 1"), std::string::npos) << wf.err;
  EXPECT_EQ(run({"device", "--no-such-flag"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
  std::ofstream(dir_ / "file") << "x";
  EXPECT_EQ(run({"--out", (dir_ / "file" / "sub").string(), "device"}).code, kExitOutput);
}

TEST_F(CliTest, HelpListsFlags) {
  const Result r = run({"attack", "--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* flag : {"--width", "--trials", "--traces", "--noise", "--pv"})
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
}

TEST_F(CliTest, AttackDeterministicAcrossThreads) {
  const std::vector<std::string> args = {"attack", "--width", "8", "--trials", "300", "--traces", "4", "--noise", "5e-5", "--pv"};
  auto with = [&](const std::string& sub, const std::string& threads) {
    std::vector<std::string> a = {"--out", out(sub), "--threads", threads, "--seed", "11"};
    a.insert(a.end(), args.begin(), args.end());
    EXPECT_EQ(run(a).code, 0);
    return slurp(fs::path(out(sub)) / "campaign.json");
  };
  const std::string one = with("t1", "1");
  EXPECT_EQ(one, with("t4", "4"));
  EXPECT_EQ(one, with("t1b", "1"));
  const auto j = nlohmann::json::parse(one);
  EXPECT_EQ(j["seed"], 11);
  EXPECT_EQ(j["trials"], 300);
}

}  // namespace
}  // namespace sttsca
