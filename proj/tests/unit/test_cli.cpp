// Copyright 2026 The gsforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gsforge/cli.hpp"

namespace {

struct Invocation {
  int code;
  std::string out, err;
};

Invocation gsforge(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gsforge::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string &name, const std::string &content = "") {
  const auto p = std::filesystem::temp_directory_path() / ("gsforge_cli_" + name);
  if (!content.empty()) std::ofstream(p) << content;
  return p;
}

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

TEST(Cli, EstimateTreeTableIV) {
  const Invocation r = gsforge({"estimate", "--protocol", "tree", "--b0", "6", "--b1", "1", "--preset", "ff-tableIV"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0.823\n");
}

TEST(Cli, EstimateJsonHasTotalAndFactors) {
  const Invocation r = gsforge({"estimate", "--protocol", "cluster", "--k", "2", "--n", "8", "--preset", "tf-tableIV",
                         "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["total"].get<double>(), 0.83778, 5e-6);
  EXPECT_FALSE(j["factors"].empty());
}

TEST(Cli, FlagsOverridePreset) {
  const Invocation base = gsforge({"estimate", "--protocol", "rgs", "--b0", "4", "--preset", "ff-tableIV"});
  const Invocation ideal = gsforge({"estimate", "--protocol", "rgs", "--b0", "4", "--preset", "ff-tableIV", "--fm", "1",
                             "--fsq", "1", "--fcr", "1", "--fcnot", "1", "--t2", "1e9", "--t1", "1e9"});
  ASSERT_EQ(base.code, 0);
  ASSERT_EQ(ideal.code, 0) << ideal.err;
  EXPECT_EQ(ideal.out, "1.000\n");
  EXPECT_NE(base.out, ideal.out);
}

TEST(Cli, VerifyPassesAndFails) {
  EXPECT_EQ(gsforge({"verify", "--protocol", "rgs", "--b0", "3", "--flavor", "tf", "--strategy", "parallel"}).code, 0);
  EXPECT_EQ(gsforge({"verify", "--protocol", "cluster", "--k", "2", "--n", "3"}).code, 0);
  EXPECT_EQ(gsforge({"verify", "--protocol", "shor", "--flavor", "ff"}).code, 0);
  const Invocation bad = gsforge({"verify", "--protocol", "tree", "--b0", "2", "--b1", "1", "--aux-basis", "z"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
}

TEST(Cli, VerifySampled) {
  const Invocation r = gsforge({"verify", "--protocol", "tree", "--b0", "3", "--b1", "2", "--trials", "20", "--seed", "5",
                         "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(r.out)["all_pass"].get<bool>());
}

TEST(Cli, CompileFormats) {
  const Invocation text = gsforge({"compile", "--protocol", "cluster", "--k", "1", "--n", "2", "--flavor", "tf"});
  ASSERT_EQ(text.code, 0);
  EXPECT_EQ(text.out.rfind("{", 0), 0u);
  const Invocation json = gsforge({"compile", "--protocol", "cluster", "--k", "1", "--n", "2", "--flavor", "tf",
                            "--format", "json"});
  const auto j = nlohmann::json::parse(json.out);
  EXPECT_EQ(j["header"]["protocol"], "cluster");
  EXPECT_EQ(j["header"]["flavor"], "tf");
  const Invocation csv = gsforge({"compile", "--protocol", "cluster", "--k", "1", "--n", "2", "--format", "csv"});
  EXPECT_EQ(csv.out.rfind("kind,count\n", 0), 0u);
}

TEST(Cli, SweepFigureToFile) {
  const auto path = temp_file("fig6a.csv");
  const Invocation r = gsforge({"sweep", "--fig", "6a", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const std::string csv = slurp(path);
  EXPECT_EQ(csv.rfind("f2q,tau,fidelity\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 101);
  std::filesystem::remove(path);
}

TEST(Cli, SweepExplicitAxis) {
  const Invocation r = gsforge({"sweep", "--protocol", "cluster", "--k", "2", "--preset", "tf-tableIV", "--axis", "n:1:4:4",
                         "--metric", "fidelity"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
  EXPECT_EQ(gsforge({"sweep", "--protocol", "cluster", "--axis", "n:1:4"}).code, 1);
  EXPECT_EQ(gsforge({"sweep", "--protocol", "cluster", "--k", "2"}).code, 1);
}

TEST(Cli, BudgetRows) {
  const Invocation r = gsforge({"budget", "--b0", "6", "--b1", "1", "--preset", "ff-tableIV", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("removed,total\nnone,0.8229", 0), 0u) << r.out;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 6);
}

TEST(Cli, OracleBandDecidesExitCode) {
  const Invocation tf = gsforge({"oracle", "--protocol", "cluster", "--k", "2", "--n", "2", "--preset", "tf-tableIII"});
  EXPECT_EQ(tf.code, 0) << tf.err;
  const auto j = nlohmann::json::parse(tf.out);
  EXPECT_EQ(j["method"], "dense");
  EXPECT_LE(std::abs(j["delta"].get<double>()), 0.015);
  // FF Table III sits outside the band; see README.
  EXPECT_EQ(gsforge({"oracle", "--protocol", "cluster", "--k", "2", "--n", "2", "--preset", "ff-tableIII"}).code, 2);
  EXPECT_EQ(gsforge({"oracle", "--protocol", "cluster", "--k", "2", "--n", "2", "--method", "exact"}).code, 1);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args = {"oracle", "--protocol", "tree", "--b0", "2", "--b1", "1",
                                         "--preset", "tf-tableIII", "--method", "pauli_mc", "--trials", "2000",
                                         "--seed", "9"};
  const Invocation a = gsforge(args), b = gsforge(args);
  EXPECT_EQ(a.out, b.out);
  const Invocation s1 = gsforge({"sweep", "--fig", "3a"}), s2 = gsforge({"sweep", "--fig", "3a"});
  EXPECT_EQ(s1.out, s2.out);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(gsforge({}).code, 1);
  EXPECT_EQ(gsforge({"transmogrify"}).code, 1);
  EXPECT_EQ(gsforge({"estimate", "--protocol", "tree", "--bogus", "1"}).code, 1);
  const Invocation missing = gsforge({"estimate", "--b0", "6"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("protocol"), std::string::npos);
  const Invocation badnum = gsforge({"estimate", "--protocol", "tree", "--b0", "six"});
  EXPECT_EQ(badnum.code, 1);
  EXPECT_NE(badnum.err.find("b0"), std::string::npos);
  EXPECT_EQ(gsforge({"estimate", "--protocol", "tree", "--b0", "2", "--b1", "1", "--fsq", "1.5"}).code, 1);
  EXPECT_EQ(gsforge({"estimate", "--protocol", "pyramid"}).code, 1);
  EXPECT_EQ(gsforge({"estimate", "--protocol", "tree", "--b0", "2", "--preset", "ff-tableIV", "--flavor", "tf"}).code,
            1);
  EXPECT_EQ(gsforge({"--help"}).code, 0);
}

TEST(Cli, ConfigFile) {
  const auto cfg = temp_file("ok.json", R"({"protocol": "tree", "b0": 6, "b1": 1, "preset": "ff-tableIV"})");
  const Invocation r = gsforge({"estimate", "--config", cfg.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0.823\n");
  // Flags win over the file.
  const Invocation over = gsforge({"estimate", "--config", cfg.string(), "--preset", "tf-tableIV"});
  EXPECT_EQ(over.out, "0.827\n");
  std::filesystem::remove(cfg);
}

TEST(Cli, ConfigFileErrorsNameTheKey) {
  const auto unknown = temp_file("unknown.json", R"({"protocol": "tree", "depth": 3})");
  Invocation r = gsforge({"estimate", "--config", unknown.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("depth"), std::string::npos);

  const auto typed = temp_file("typed.json", R"({"protocol": "tree", "b0": "six"})");
  r = gsforge({"estimate", "--config", typed.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("b0"), std::string::npos);

  const auto broken = temp_file("broken.json", R"({"protocol": )");
  EXPECT_EQ(gsforge({"estimate", "--config", broken.string()}).code, 1);
  EXPECT_EQ(gsforge({"estimate", "--config", "/nonexistent/gsforge.json"}).code, 1);
  for (const auto &p : {unknown, typed, broken}) std::filesystem::remove(p);
}

}  // namespace
