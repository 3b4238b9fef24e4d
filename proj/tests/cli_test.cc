// Copyright 2026 The qmcdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qmcdisc/discrepancy.h"
#include "qmcdisc/error.h"
#include "qmcdisc/pointsets.h"

namespace qmcdisc::cli {
namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;

  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Outcome invoke(const std::vector<std::string>& args) {
      std::ostringstream out, err;
      Outcome r;
      r.code = main_entry(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char ch : text) n += ch == '\n';
  return n;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("qmcdisc_cli_" + std::string(
                                 ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

TEST_F(CliTest, GenRowCounts) {
  const Outcome a = invoke({"gen", "--variant", "halton", "--bases", "2,3", "--n",
                            "4", "--format", "csv"});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(count_lines(a.out), 5);  // header + 4 rows
  EXPECT_EQ(a.out.substr(0, 6), "x1,x2\n");

  const Outcome b = invoke({"gen", "--variant", "hammersley-sym", "--bases", "2,3",
                            "--n", "8", "--format", "csv"});
  EXPECT_EQ(count_lines(b.out), 16);

  const Outcome c = invoke({"gen", "--variant", "hammersley-sym-dot", "--bases",
                            "2,3", "--n", "3", "--format", "json"});
  EXPECT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(c.json()["result"]["count"], 12);
  EXPECT_EQ(c.json()["result"]["points"].size(), 12u);
}

TEST_F(CliTest, RejectsNonCoprimeBases) {
  const Outcome r = invoke({"gen", "--bases", "2,4", "--n", "4"});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("coprime"), std::string::npos) << r.err;
}

TEST_F(CliTest, ValidationBeforeWork) {
  EXPECT_EQ(invoke({"disc", "--n", "8", "--p", "-1"}).code, kExitValidation);
  EXPECT_EQ(invoke({"disc", "--n", "8", "--p", "3", "--exact"}).code,
            kExitValidation);
  EXPECT_EQ(invoke({"clt", "--variant", "halton", "--n", "8"}).code,
            kExitValidation);
  EXPECT_EQ(invoke({"scaling", "--p", "2"}).code, kExitValidation);
  EXPECT_EQ(invoke({"gen", "--n", "4", "--format", "xml"}).code, kExitValidation);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitValidation);
  EXPECT_EQ(invoke({"gen", "--n", "4", "--bogus"}).code, kExitValidation);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST_F(CliTest, DiscExactMatchesLibrary) {
  const Outcome r = invoke({"disc", "--variant", "hammersley", "--bases", "2,3",
                            "--n", "64", "--p", "2", "--exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  const double raw = r.json()["result"]["value"]["raw"].get<double>();
  EXPECT_EQ(raw, l2_exact(hammersley(BaseSystem({2, 3}), 64)).raw);
  EXPECT_EQ(r.json()["result"]["value"]["method"], "exact");
}

TEST_F(CliTest, DiscInfNormalizedInUnitInterval) {
  const Outcome r = invoke({"disc", "--bases", "2,3", "--n", "16", "--p", "inf"});
  ASSERT_EQ(r.code, 0) << r.err;
  const double v = r.json()["result"]["value"]["normalized"].get<double>();
  EXPECT_GT(v, 0.0);
  EXPECT_LE(v, 1.0);
  EXPECT_EQ(r.json()["result"]["value"]["p"], "inf");
}

TEST_F(CliTest, DiscMonteCarloDeterministicAcrossThreads) {
  const std::vector<std::string> base{"disc", "--bases", "2,3", "--n", "128",
                                      "--p", "1", "--samples", "100000",
                                      "--seed", "7"};
  const Outcome a = invoke(base);
  const Outcome b = invoke(base);
  auto with_threads = base;
  with_threads.insert(with_threads.end(), {"--threads", "3"});
  const Outcome c = invoke(with_threads);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.json()["result"], b.json()["result"]);
  EXPECT_EQ(a.json()["result"], c.json()["result"]);
  EXPECT_TRUE(a.json()["result"]["value"].contains("stderr"));
  EXPECT_TRUE(a.json().contains("timing"));
}

TEST_F(CliTest, DiscAtPointReportsTruncation) {
  const Outcome r = invoke({"disc", "--bases", "2,3", "--n", "100", "--at",
                            "0.3,0.7", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "local,depth,truncated,via_blocks");
  const Outcome j = invoke({"disc", "--bases", "2,3", "--n", "100", "--at", "0.3,0.7"});
  const nlohmann::json doc = j.json();
  const nlohmann::json& t = doc["result"]["truncated"];
  EXPECT_EQ(t["depth"], 7);
  EXPECT_NEAR(t["value"].get<double>(), t["via_blocks"].get<double>(), 1e-8);
  EXPECT_LE(std::fabs(t["value"].get<double>() -
                      doc["result"]["local"].get<double>()),
            2.0);
}

TEST_F(CliTest, GenManifestFeedsDisc) {
  const std::string csv = path("set.csv");
  const Outcome g = invoke({"gen", "--variant", "generalized-halton", "--perm-seed",
                            "4", "--bases", "2,3,5", "--n", "200", "--q", "-3",
                            "--format", "csv", "--out", csv});
  ASSERT_EQ(g.code, 0) << g.err;
  ASSERT_TRUE(std::filesystem::exists(path("set.json")));
  const Outcome from_file =
      invoke({"disc", "--input", path("set.json"), "--p", "2", "--exact"});
  const Outcome direct = invoke({"disc", "--variant", "generalized-halton",
                                 "--perm-seed", "4", "--bases", "2,3,5", "--n",
                                 "200", "--q", "-3", "--p", "2", "--exact"});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(from_file.json()["result"], direct.json()["result"]);
}

TEST_F(CliTest, SelfTest) {
  const Outcome a = invoke({"selftest", "--seed", "3", "--block-cases", "60",
                            "--reconstruction-cases", "10"});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto res = a.json()["result"];
  EXPECT_TRUE(res["passed"].get<bool>());
  EXPECT_EQ(res["crt"]["mismatches"], 0);
  EXPECT_LT(res["fourier"]["max_block_error"].get<double>(), 1e-9);
  const Outcome b = invoke({"selftest", "--seed", "3", "--block-cases", "60",
                            "--reconstruction-cases", "10"});
  EXPECT_EQ(a.json()["result"], b.json()["result"]);

  const Outcome bad = invoke({"selftest", "--block-cases", "5",
                              "--reconstruction-cases", "2", "--inject-failure"});
  EXPECT_EQ(bad.code, kExitSelfTest);
  EXPECT_FALSE(bad.json()["result"]["passed"].get<bool>());
}

TEST_F(CliTest, CltReport) {
  const Outcome r = invoke({"clt", "--bases", "2,3,5", "--n", "256", "--samples",
                            "2000", "--seed", "1", "--samples-out", path("y.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto res = r.json()["result"];
  EXPECT_EQ(res["variant"], "hammersley");
  EXPECT_EQ(res["moments"].size(), 6u);
  EXPECT_TRUE(res["shape"].contains("kurtosis"));
  EXPECT_GT(res["ks"].get<double>(), 0.0);
  std::ifstream f(path("y.csv"));
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "y");
}

TEST_F(CliTest, ScalingOneRowPerN) {
  const Outcome r = invoke({"scaling", "--bases", "2,3", "--p", "2", "--nlist",
                            "16..256", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 6);
}

TEST_F(CliTest, RatioTarget) {
  const Outcome r = invoke({"ratio", "--bases", "2,3", "--p", "4", "--n", "64",
                            "--samples", "2000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.json()["result"]["rows"][0]["target"].get<double>(),
              std::pow(3.0, 0.25), 1e-15);
}

TEST_F(CliTest, BudgetExitCode) {
  EXPECT_EQ(invoke({"disc", "--n", "100", "--p", "2", "--exact",
                    "--pair-budget", "10"})
                .code,
            kExitBudget);
  setenv("QMCDISC_GRID_BUDGET", "50", 1);
  const Outcome env = invoke({"disc", "--n", "100", "--p", "inf"});
  unsetenv("QMCDISC_GRID_BUDGET");
  EXPECT_EQ(env.code, kExitBudget);
  // Flags override the environment.
  setenv("QMCDISC_PAIR_BUDGET", "10", 1);
  const Outcome flag = invoke({"disc", "--n", "100", "--p", "2", "--exact",
                               "--pair-budget", "1000"});
  unsetenv("QMCDISC_PAIR_BUDGET");
  EXPECT_EQ(flag.code, 0) << flag.err;
}

TEST_F(CliTest, ReplayReproducesResult) {
  const std::string first = path("first.json");
  const Outcome a = invoke({"ratio", "--bases", "2,3", "--p", "1", "--nlist",
                            "32,64", "--samples", "3000", "--seed", "9", "--out",
                            first});
  ASSERT_EQ(a.code, 0) << a.err;
  const Outcome b = invoke({"replay", "--config", first});
  ASSERT_EQ(b.code, 0) << b.err;
  std::ifstream f(first);
  const nlohmann::json original = nlohmann::json::parse(f);
  EXPECT_EQ(b.json()["result"], original["result"]);
  EXPECT_EQ(b.json()["provenance"], original["provenance"]);
  EXPECT_EQ(invoke({"replay", "--config", path("missing.json")}).code,
            kExitValidation);
}

TEST(ParseTest, NListsAndP) {
  EXPECT_EQ(parse_n_list("16..65536").size(), 13u);
  EXPECT_EQ(parse_n_list("16..65536").front(), 16u);
  EXPECT_EQ(parse_n_list("3..20"), (std::vector<uint64_t>{4, 8, 16}));
  EXPECT_EQ(parse_n_list("3,5,7"), (std::vector<uint64_t>{3, 5, 7}));
  EXPECT_THROW(parse_n_list("5..3"), ValidationError);
  EXPECT_THROW(parse_n_list("5,x"), ValidationError);
  EXPECT_TRUE(std::isinf(parse_p("inf")));
  EXPECT_EQ(parse_p("1.5"), 1.5);
  EXPECT_THROW(parse_p("0"), ValidationError);
}

TEST(ParseTest, ConfigJsonRoundTrip) {
  const RunConfig c = parse_args({"disc", "--bases", "2,3,5", "--n", "9",
                                  "--p", "inf", "--perm-seed", "3", "--variant",
                                  "generalized-halton"});
  const RunConfig back = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
  EXPECT_TRUE(std::isinf(back.p));
  EXPECT_EQ(*back.perm_seed, 3u);
}

}  // namespace
}  // namespace qmcdisc::cli
