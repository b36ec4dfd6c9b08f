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

#ifndef GOPTIER_REPOSITORY_HPP_
#define GOPTIER_REPOSITORY_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace goptier {

// A group of pictures is the unit of every placement decision. Frames,
// macroblocks and sequence/GOP headers are not modelled.
struct Gop {
  int index = 0;               // 0-based position within its video
  double size_mb = 0.0;
  std::uint64_t views = 0;     // accesses in the last period
  double transcode_time_s = 0.0;

  bool operator==(const Gop&) const = default;
};

struct Video {
  std::string id;
  std::vector<Gop> gops;
  std::uint64_t video_views = 0;

  bool operator==(const Video&) const = default;
};

class Repository {
 public:
  static constexpr int kDefaultPeriodDays = 30;

  // Validates: distinct video ids, non-empty GOP lists indexed 0..n-1,
  // positive sizes and transcode times, video_views >= every GOP's views,
  // period_days > 0. Throws Error(kInvalidArgument) otherwise.
  explicit Repository(std::vector<Video> videos,
                      std::optional<std::int64_t> synthesis_seed = std::nullopt,
                      int period_days = kDefaultPeriodDays);

  const std::vector<Video>& videos() const { return videos_; }
  std::optional<std::int64_t> synthesis_seed() const { return synthesis_seed_; }
  int period_days() const { return period_days_; }

  // Position of the video in videos(), or nullopt.
  std::optional<std::size_t> find(const std::string& video_id) const;

  bool operator==(const Repository&) const = default;

 private:
  std::vector<Video> videos_;
  std::optional<std::int64_t> synthesis_seed_;
  int period_days_;
};

struct RepositoryTotals {
  double total_size_mb = 0.0;
  std::uint64_t total_views = 0;  // summed over GOPs
  std::uint64_t gop_count = 0;
};

RepositoryTotals ComputeTotals(const Repository& repo);

struct GopKey {
  std::string video_id;
  int index = 0;

  auto operator<=>(const GopKey&) const = default;
};

struct FavSelection {
  std::vector<std::string> fav_video_ids;  // descending video_views
  std::vector<GopKey> fav_gops;            // grouped by video, ascending index
  double fav_fraction = 0.0;
};

// Ships with the threshold at zero: every GOP of a FAV video is selected.
// See README ("FAV selection") for why the GOP-level cut defaults off.
inline constexpr double kDefaultGopHotnessThreshold = 0.0;

// Top ceil(fav_fraction * N) videos by video_views (ties: ascending id) are
// FAV; within each, GOPs with views >= threshold * max GOP views are kept.
FavSelection SelectFavs(const Repository& repo, double fav_fraction,
                        double gop_hotness_threshold = kDefaultGopHotnessThreshold);

// Repository files are JSON Lines. An optional first header line
//   {"goptier_repository": 1, "period_days": 30, "synthesis_seed": 42}
// is followed by one video per line:
//   {"id": "v0001", "video_views": 1000,
//    "gops": [{"size_mb": 1.2, "views": 1000, "transcode_time_s": 1.5}, ...]}
// GOP indices are implied by array position.
void WriteRepository(const Repository& repo, std::ostream& out);
void SaveRepository(const Repository& repo, const std::filesystem::path& path);
Repository ReadRepository(std::istream& in);
Repository LoadRepository(const std::filesystem::path& path);

}  // namespace goptier

#endif  // GOPTIER_REPOSITORY_HPP_
