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

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "goptier/error.hpp"
#include "goptier/repository.hpp"
#include "goptier/synth.hpp"
#include <nlohmann/json.hpp>
#include "test_support.hpp"

namespace goptier {
namespace {

using testing::MakeVideo;

Repository TenVideos() {
  std::vector<Video> videos;
  for (int i = 0; i < 10; ++i) {
    videos.push_back(MakeVideo("v" + std::to_string(i), {static_cast<std::uint64_t>(100 + i * 10)}));
  }
  return Repository(std::move(videos));
}

std::vector<int> IndicesOf(const FavSelection& s, const std::string& id) {
  std::vector<int> out;
  for (const GopKey& k : s.fav_gops) {
    if (k.video_id == id) out.push_back(k.index);
  }
  return out;
}

TEST(SelectFavsTest, TopThirtyPercentOfTenIsThree) {
  const FavSelection s = SelectFavs(TenVideos(), 0.3);
  EXPECT_EQ(s.fav_video_ids, (std::vector<std::string>{"v9", "v8", "v7"}));
  EXPECT_EQ(s.fav_gops.size(), 3u);
  EXPECT_DOUBLE_EQ(s.fav_fraction, 0.3);
}

TEST(SelectFavsTest, FractionRoundsUp) {
  EXPECT_EQ(SelectFavs(TenVideos(), 0.05).fav_video_ids.size(), 1u);
  EXPECT_EQ(SelectFavs(TenVideos(), 0.25).fav_video_ids.size(), 3u);
  EXPECT_EQ(SelectFavs(TenVideos(), 1.0).fav_video_ids.size(), 10u);
}

TEST(SelectFavsTest, TiesBreakByAscendingId) {
  Repository repo({MakeVideo("c", {5}), MakeVideo("a", {5}), MakeVideo("b", {5})});
  EXPECT_EQ(SelectFavs(repo, 0.5).fav_video_ids, (std::vector<std::string>{"a", "b"}));
}

TEST(SelectFavsTest, HotnessThresholdKeepsGopsNearThePeak) {
  Repository repo({MakeVideo("only", {100, 90, 40, 10, 2})});
  EXPECT_EQ(IndicesOf(SelectFavs(repo, 1.0, 0.3), "only"), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(IndicesOf(SelectFavs(repo, 1.0, 0.0), "only"), (std::vector<int>{0, 1, 2, 3, 4}));
  EXPECT_EQ(IndicesOf(SelectFavs(repo, 1.0, 1.0), "only"), (std::vector<int>{0}));
}

TEST(SelectFavsTest, DefaultThresholdKeepsEveryGopOfAFavVideo) {
  Repository repo({MakeVideo("a", {1000, 1, 0}), MakeVideo("b", {3})});
  const FavSelection s = SelectFavs(repo, 0.5);
  EXPECT_EQ(IndicesOf(s, "a"), (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(IndicesOf(s, "b").empty());
}

TEST(SelectFavsTest, RejectsBadInput) {
  try {
    SelectFavs(Repository({}), 0.3);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyRepository);
  }
  EXPECT_THROW(SelectFavs(TenVideos(), 0.0), Error);
  EXPECT_THROW(SelectFavs(TenVideos(), 1.5), Error);
  EXPECT_THROW(SelectFavs(TenVideos(), 0.3, -0.1), Error);
}

TEST(SelectFavsProperty, GrowingFractionOnlyAddsVideos) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Repository repo = testing::RandomRepository(rng);
    std::uniform_real_distribution<double> frac(0.01, 1.0);
    double a = frac(rng), b = frac(rng);
    if (a > b) std::swap(a, b);
    const FavSelection small = SelectFavs(repo, a, 0.2);
    const FavSelection large = SelectFavs(repo, b, 0.2);
    ASSERT_LE(small.fav_video_ids.size(), large.fav_video_ids.size());
    ASSERT_TRUE(std::equal(small.fav_video_ids.begin(), small.fav_video_ids.end(),
                           large.fav_video_ids.begin()));
    std::set<GopKey> big(large.fav_gops.begin(), large.fav_gops.end());
    for (const GopKey& k : small.fav_gops) ASSERT_TRUE(big.count(k));
  }
}

TEST(SelectFavsProperty, RaisingThresholdOnlyRemovesGops) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Repository repo = testing::RandomRepository(rng);
    const FavSelection loose = SelectFavs(repo, 0.5, 0.1);
    const FavSelection tight = SelectFavs(repo, 0.5, 0.6);
    EXPECT_EQ(loose.fav_video_ids, tight.fav_video_ids);
    std::set<GopKey> all(loose.fav_gops.begin(), loose.fav_gops.end());
    for (const GopKey& k : tight.fav_gops) ASSERT_TRUE(all.count(k));
    // The peak GOP of every FAV video survives any threshold.
    std::set<std::string> covered;
    for (const GopKey& k : tight.fav_gops) covered.insert(k.video_id);
    EXPECT_EQ(covered.size(), tight.fav_video_ids.size());
  }
}

TEST(RepositoryTest, ValidatesConstruction) {
  EXPECT_THROW(Repository({MakeVideo("a", {1}), MakeVideo("a", {2})}), Error);
  Video bad = MakeVideo("a", {5});
  bad.video_views = 4;
  EXPECT_THROW(Repository({bad}), Error);
  Video zero = MakeVideo("z", {1}, 0.0);
  EXPECT_THROW(Repository({zero}), Error);
  EXPECT_THROW(Repository({MakeVideo("e", {})}), Error);
}

TEST(RepositoryTest, FindLocatesVideos) {
  const Repository repo = TenVideos();
  EXPECT_EQ(repo.find("v4"), 4u);
  EXPECT_FALSE(repo.find("missing").has_value());
}

TEST(RepositoryTest, StreamRoundTripKeepsEverything) {
  SynthSpec spec;
  spec.video_count = 40;
  spec.seed = 5;
  const Repository repo = Synthesize(spec);
  std::stringstream buf;
  WriteRepository(repo, buf);
  const Repository back = ReadRepository(buf);
  EXPECT_EQ(back, repo);
  EXPECT_EQ(back.synthesis_seed(), 5);
}

TEST(RepositoryTest, HeaderLineIsOptional) {
  std::istringstream in(
      R"({"id":"x","video_views":9,"gops":[{"size_mb":1.5,"views":9,"transcode_time_s":2}]})"
      "\n");
  const Repository repo = ReadRepository(in);
  ASSERT_EQ(repo.videos().size(), 1u);
  EXPECT_EQ(repo.videos()[0].gops[0].views, 9u);
  EXPECT_FALSE(repo.synthesis_seed().has_value());
  EXPECT_EQ(repo.period_days(), Repository::kDefaultPeriodDays);
}

TEST(RepositoryTest, MalformedLinesAreParseErrors) {
  for (const char* text : {
           "{not json}\n",
           R"({"id":"x","video_views":9,"gops":[{"size_mb":1,"views":-3,"transcode_time_s":1}]})"
           "\n",
           R"({"id":"x","gops":[]})"
           "\n",
       }) {
    std::istringstream in(text);
    try {
      ReadRepository(in);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::kParse || e.code() == ErrorCode::kInvalidArgument)
          << text;
    }
  }
}

// Totals recomputed by streaming the saved file line by line, without going
// through the repository reader.
TEST(RepositoryTest, TotalsMatchIndependentRescanOfTheFile) {
  SynthSpec spec;
  spec.video_count = 200;
  spec.seed = 9;
  const Repository repo = Synthesize(spec);
  const auto path = testing::ScratchDir("totals") / "repo.jsonl";
  SaveRepository(repo, path);

  std::ifstream in(path);
  std::string line;
  double size = 0.0;
  std::uint64_t views = 0, gops = 0;
  while (std::getline(in, line)) {
    const auto doc = nlohmann::json::parse(line);
    if (!doc.contains("gops")) continue;
    for (const auto& g : doc["gops"]) {
      size += g["size_mb"].get<double>();
      views += g["views"].get<std::uint64_t>();
      ++gops;
    }
  }
  const RepositoryTotals t = ComputeTotals(LoadRepository(path));
  EXPECT_NEAR(t.total_size_mb, size, 1e-9 * size);
  EXPECT_EQ(t.total_views, views);
  EXPECT_EQ(t.gop_count, gops);
}

TEST(RepositoryTest, MissingFileIsIoError) {
  try {
    LoadRepository("/nonexistent/dir/repo.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

}  // namespace
}  // namespace goptier
