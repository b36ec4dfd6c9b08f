// Copyright 2026 The goptier Authors. All Rights Reserved.
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

// Drives the goptier executable end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult RunCli(const std::string& args) {
  const std::string cmd = std::string(GOPTIER_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

fs::path Scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("goptier_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

double Field(const std::string& text, const std::string& key) {
  const std::regex re(key + "=([0-9.eE+-]+)");
  std::smatch m;
  if (!std::regex_search(text, m, re)) return -1.0;
  return std::stod(m[1]);
}

fs::path SmallRepo(const fs::path& dir) {
  const fs::path repo = dir / "repo.jsonl";
  EXPECT_EQ(RunCli("synth --videos 60 --seed 4 -o " + repo.string()).exit_code, 0);
  return repo;
}

TEST(CliTest, VersionShowsCatalog) {
  const RunResult r = RunCli("--version");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("0.1.0"), std::string::npos);
  EXPECT_NE(r.out.find("Glacier"), std::string::npos);
}

TEST(CliTest, SynthIsDeterministic) {
  const fs::path dir = Scratch("synth");
  EXPECT_EQ(RunCli("synth --seed 42 --videos 100 -o " + (dir / "a.jsonl").string()).exit_code, 0);
  EXPECT_EQ(RunCli("synth --seed 42 --videos 100 -o " + (dir / "b.jsonl").string()).exit_code, 0);
  EXPECT_EQ(Slurp(dir / "a.jsonl"), Slurp(dir / "b.jsonl"));
  EXPECT_EQ(RunCli("synth --seed 43 --videos 100 -o " + (dir / "c.jsonl").string()).exit_code, 0);
  EXPECT_NE(Slurp(dir / "a.jsonl"), Slurp(dir / "c.jsonl"));
}

TEST(CliTest, UsageErrorsExitWithTwo) {
  const fs::path dir = Scratch("usage");
  EXPECT_EQ(RunCli("synth --videos 10").exit_code, 2);
  EXPECT_EQ(RunCli("synth --videos 0 -o " + (dir / "x.jsonl").string()).exit_code, 2);
  const fs::path repo = SmallRepo(dir);
  EXPECT_EQ(RunCli("cost " + repo.string() + " --policy cheapest").exit_code, 2);
  EXPECT_EQ(RunCli("frobnicate").exit_code, 2);
}

TEST(CliTest, RuntimeErrorsExitWithOne) {
  EXPECT_EQ(RunCli("cost /no/such/repo.jsonl --policy full-re").exit_code, 1);
  EXPECT_EQ(RunCli("report /no/such/rows.csv -o /tmp").exit_code, 1);
}

TEST(CliTest, FullPreCostIsTotalSizeAtStandardRate) {
  const fs::path dir = Scratch("fullpre");
  const fs::path repo = dir / "repo.jsonl";
  const RunResult s = RunCli("synth --videos 60 --seed 4 -o " + repo.string());
  ASSERT_EQ(s.exit_code, 0);
  const double size_mb = Field(s.out, "total_size_mb");
  const RunResult c = RunCli("cost " + repo.string() + " --policy full-pre");
  ASSERT_EQ(c.exit_code, 0);
  EXPECT_NEAR(Field(c.out, "storage_usd"), size_mb * 0.023 / 1024, 2e-6);
  EXPECT_EQ(Field(c.out, "compute_usd"), 0.0);
}

TEST(CliTest, GopClusteringListsFourClustersSummingToStorage) {
  const fs::path dir = Scratch("gop");
  const fs::path repo = SmallRepo(dir);
  const RunResult c = RunCli("cost " + repo.string() + " --policy gop-clustering --fav-pct 0.3");
  ASSERT_EQ(c.exit_code, 0);
  double sum = 0.0;
  for (int i = 1; i <= 4; ++i) {
    const double ci = Field(c.out, "C" + std::to_string(i));
    ASSERT_GE(ci, 0.0) << c.out;
    sum += ci;
  }
  EXPECT_NEAR(sum, Field(c.out, "storage_usd"), 5e-6);
}

TEST(CliTest, CostAppendsCsvRows) {
  const fs::path dir = Scratch("csv");
  const fs::path repo = SmallRepo(dir);
  const fs::path csv = dir / "costs.csv";
  for (const char* p : {"full-re", "partial-pre"}) {
    ASSERT_EQ(RunCli("cost " + repo.string() + " --policy " + p + " --csv " + csv.string())
                  .exit_code,
              0);
  }
  std::ifstream in(csv);
  std::string header, a, b, extra;
  std::getline(in, header);
  std::getline(in, a);
  std::getline(in, b);
  EXPECT_FALSE(std::getline(in, extra));
  EXPECT_EQ(header.rfind("policy,fav_pct,seed,", 0), 0u);
  EXPECT_EQ(a.rfind("full-re,", 0), 0u);
  EXPECT_EQ(b.rfind("partial-pre,", 0), 0u);
}

TEST(CliTest, ClusterLabelsStayWithinFourClusters) {
  const fs::path dir = Scratch("cluster");
  const fs::path repo = SmallRepo(dir);
  const fs::path out = dir / "clusters.csv";
  ASSERT_EQ(RunCli("cluster " + repo.string() + " --fav-pct 0.3 -o " + out.string()).exit_code, 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  std::set<std::string> labels, tiers;
  while (std::getline(in, line)) {
    const auto last = line.rfind(',');
    const auto prev = line.rfind(',', last - 1);
    labels.insert(line.substr(prev + 1, last - prev - 1));
    tiers.insert(line.substr(last + 1));
  }
  EXPECT_EQ(labels, (std::set<std::string>{"0", "1", "2", "3"}));
  EXPECT_EQ(tiers.size(), 4u);
}

TEST(CliTest, ReportOnReferenceTable) {
  const fs::path dir = Scratch("report");
  const RunResult r =
      RunCli("report " + std::string(GOPTIER_DATA_DIR) + "/reference_costs.csv -o " + dir.string());
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("18.75%"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "table.csv"));
  EXPECT_TRUE(fs::exists(dir / "curves.csv"));
  EXPECT_NE(Slurp(dir / "summary.txt").find("18.75%"), std::string::npos);
}

TEST(CliTest, SweepWritesReportFilesDeterministically) {
  const fs::path dir = Scratch("sweep");
  {
    std::ofstream spec(dir / "spec.json");
    spec << R"({"seeds":[1,2],"synth":{"video_count":40},"output_dir":"out"})";
  }
  ASSERT_EQ(RunCli("sweep " + (dir / "spec.json").string() + " -j 2").exit_code, 0);
  ASSERT_EQ(RunCli("sweep " + (dir / "spec.json").string() + " -o " + (dir / "again").string())
                .exit_code,
            0);
  for (const char* f : {"table.csv", "curves.csv", "summary.txt", "rows.csv", "clusters.csv"}) {
    ASSERT_TRUE(fs::exists(dir / "out" / f)) << f;
    EXPECT_EQ(Slurp(dir / "out" / f), Slurp(dir / "again" / f)) << f;
  }
}

TEST(CliTest, SweepSeedOverride) {
  const fs::path dir = Scratch("seeds");
  {
    std::ofstream spec(dir / "spec.json");
    spec << R"({"synth":{"video_count":30},"fav_percentages":[0.3]})";
  }
  const RunResult r =
      RunCli("sweep " + (dir / "spec.json").string() + " --seeds 8,9 -o " + dir.string());
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("10 rows"), std::string::npos) << r.out;
}

}  // namespace
