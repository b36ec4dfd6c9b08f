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
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "goptier/error.hpp"
#include "goptier/synth.hpp"

namespace goptier {
namespace {

SynthSpec Small(std::int64_t videos, std::int64_t seed) {
  SynthSpec s;
  s.video_count = videos;
  s.seed = seed;
  return s;
}

std::string Dump(const Repository& repo) {
  std::ostringstream out;
  WriteRepository(repo, out);
  return out.str();
}

TEST(SynthTest, SameSeedSameBytes) {
  EXPECT_EQ(Dump(Synthesize(Small(300, 42))), Dump(Synthesize(Small(300, 42))));
}

TEST(SynthTest, DifferentSeedDifferentRepository) {
  EXPECT_NE(Synthesize(Small(300, 1)), Synthesize(Small(300, 2)));
}

// Replays the documented draw order with the raw engine.
TEST(SynthTest, FirstVideoMatchesRawEngineReplay) {
  std::mt19937_64 engine(7);
  auto unit = [&] { return static_cast<double>(engine() >> 11) / 9007199254740992.0; };
  const auto gop_count = 20 + static_cast<std::int64_t>(unit() * 101.0);
  const double size0 = 0.5 + 1.5 * unit();
  const double time0 = 0.5 + 2.5 * unit();
  unit();
  unit();
  const double size1 = 0.5 + 1.5 * unit();

  const Repository repo = Synthesize(Small(3, 7));
  const Video& v = repo.videos()[0];
  EXPECT_EQ(v.id, "v1");
  EXPECT_EQ(v.video_views, 1'000'000u);
  ASSERT_EQ(static_cast<std::int64_t>(v.gops.size()), gop_count);
  EXPECT_EQ(v.gops[0].views, v.video_views);
  EXPECT_DOUBLE_EQ(v.gops[0].size_mb, size0);
  EXPECT_DOUBLE_EQ(v.gops[0].transcode_time_s, time0);
  EXPECT_DOUBLE_EQ(v.gops[1].size_mb, size1);
}

TEST(SynthTest, VideoViewsFollowThePowerLaw) {
  const Repository repo = Synthesize(Small(100, 3));
  for (std::size_t j = 0; j < repo.videos().size(); ++j) {
    const double expect = 1e6 / std::pow(static_cast<double>(j + 1), 0.8);
    EXPECT_EQ(repo.videos()[j].video_views, static_cast<std::uint64_t>(std::llround(expect)));
  }
}

TEST(SynthTest, IdsArePaddedToSortInRankOrder) {
  const Repository repo = Synthesize(Small(1000, 3));
  EXPECT_EQ(repo.videos().front().id, "v0001");
  EXPECT_EQ(repo.videos().back().id, "v1000");
}

TEST(SynthTest, NoSpikesMeansNonIncreasingGopViews) {
  SynthSpec s = Small(200, 4);
  s.intra_video_decay = 0.5;
  s.random_spike_prob = 0.0;
  const Repository repo = Synthesize(s);
  for (const Video& v : repo.videos()) {
    for (std::size_t i = 1; i < v.gops.size(); ++i) {
      ASSERT_LE(v.gops[i].views, v.gops[i - 1].views) << v.id;
    }
  }
}

TEST(SynthTest, DrawsStayInsideConfiguredRanges) {
  SynthSpec s = Small(300, 8);
  s.gop_count_range = {3, 7};
  s.gop_size_mb_range = {1.0, 1.5};
  s.transcode_time_s_range = {2.0, 2.5};
  s.random_spike_prob = 0.5;
  const Repository repo = Synthesize(s);
  for (const Video& v : repo.videos()) {
    ASSERT_GE(v.gops.size(), 3u);
    ASSERT_LE(v.gops.size(), 7u);
    for (const Gop& g : v.gops) {
      ASSERT_GE(g.size_mb, 1.0);
      ASSERT_LT(g.size_mb, 1.5);
      ASSERT_GE(g.transcode_time_s, 2.0);
      ASSERT_LT(g.transcode_time_s, 2.5);
      ASSERT_LE(g.views, v.video_views);
    }
  }
}

TEST(SynthTest, LargePresetIsLongTailed) {
  const Repository repo = Synthesize(SynthSpec::LargePreset());
  ASSERT_EQ(repo.videos().size(), 50'000u);
  std::vector<std::uint64_t> views;
  for (const Video& v : repo.videos()) views.push_back(v.video_views);
  std::sort(views.rbegin(), views.rend());
  const double all = std::accumulate(views.begin(), views.end(), 0.0);
  const double top = std::accumulate(views.begin(), views.begin() + 5000, 0.0);
  EXPECT_GT(top / all, 0.5);
}

TEST(SynthTest, InvalidSpecsAreRejected) {
  auto expect_invalid = [](SynthSpec s) {
    try {
      Synthesize(s);
      ADD_FAILURE() << "accepted " << SerializeSynthSpec(s);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidSpec);
    }
  };
  SynthSpec s;
  s.video_count = 0;
  expect_invalid(s);
  s = {};
  s.gop_count_range = {5, 2};
  expect_invalid(s);
  s = {};
  s.intra_video_decay = 1.5;
  expect_invalid(s);
  s = {};
  s.random_spike_prob = -0.1;
  expect_invalid(s);
  s = {};
  s.gop_size_mb_range = {0.0, 1.0};
  expect_invalid(s);
}

TEST(SynthTest, SpecJsonRoundTrips) {
  SynthSpec s = Small(77, 13);
  s.gop_count_range = {4, 9};
  s.video_popularity_exponent = 1.1;
  EXPECT_EQ(ParseSynthSpec(SerializeSynthSpec(s)), s);
  const SynthSpec partial = ParseSynthSpec(R"({"video_count": 12})", s);
  EXPECT_EQ(partial.video_count, 12);
  EXPECT_EQ(partial.seed, 13);
  EXPECT_THROW(ParseSynthSpec(R"({"gop_count_range": 3})"), Error);
}

}  // namespace
}  // namespace goptier
