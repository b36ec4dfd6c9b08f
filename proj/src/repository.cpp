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

#include "goptier/repository.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include "goptier/error.hpp"
#include <nlohmann/json.hpp>

namespace goptier {
namespace {

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, "invalid repository: " + what);
}

[[noreturn]] void ParseFailure(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::kParse,
              "repository line " + std::to_string(line_no) + ": " + what);
}

constexpr const char* kHeaderKey = "goptier_repository";

std::uint64_t AsCount(const nlohmann::json& j, std::size_t line_no) {
  if (!j.is_number_unsigned()) {
    ParseFailure(line_no, "view counts must be non-negative integers");
  }
  return j.get<std::uint64_t>();
}

}  // namespace

Repository::Repository(std::vector<Video> videos,
                       std::optional<std::int64_t> synthesis_seed,
                       int period_days)
    : videos_(std::move(videos)),
      synthesis_seed_(synthesis_seed),
      period_days_(period_days) {
  if (period_days_ <= 0) Invalid("period_days must be > 0");
  std::unordered_set<std::string> ids;
  ids.reserve(videos_.size());
  for (const Video& v : videos_) {
    if (!ids.insert(v.id).second) Invalid("duplicate video id '" + v.id + "'");
    if (v.gops.empty()) Invalid("video '" + v.id + "' has no GOPs");
    for (std::size_t i = 0; i < v.gops.size(); ++i) {
      const Gop& g = v.gops[i];
      if (g.index != static_cast<int>(i)) {
        Invalid("video '" + v.id + "' GOP indices are not 0..n-1 in order");
      }
      if (!(g.size_mb > 0.0) || !std::isfinite(g.size_mb)) {
        Invalid("video '" + v.id + "' GOP " + std::to_string(i) + " size_mb must be > 0");
      }
      if (!(g.transcode_time_s > 0.0) || !std::isfinite(g.transcode_time_s)) {
        Invalid("video '" + v.id + "' GOP " + std::to_string(i) +
                " transcode_time_s must be > 0");
      }
      if (g.views > v.video_views) {
        Invalid("video '" + v.id + "' has a GOP with more views than the video");
      }
    }
  }
}

std::optional<std::size_t> Repository::find(const std::string& video_id) const {
  for (std::size_t i = 0; i < videos_.size(); ++i) {
    if (videos_[i].id == video_id) return i;
  }
  return std::nullopt;
}

RepositoryTotals ComputeTotals(const Repository& repo) {
  RepositoryTotals totals;
  for (const Video& v : repo.videos()) {
    for (const Gop& g : v.gops) {
      totals.total_size_mb += g.size_mb;
      totals.total_views += g.views;
      ++totals.gop_count;
    }
  }
  return totals;
}

FavSelection SelectFavs(const Repository& repo, double fav_fraction,
                        double gop_hotness_threshold) {
  if (!(fav_fraction > 0.0 && fav_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fav_fraction must be in (0, 1]");
  }
  if (!(gop_hotness_threshold >= 0.0 && gop_hotness_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "gop_hotness_threshold must be in [0, 1]");
  }
  const auto& videos = repo.videos();
  if (videos.empty()) {
    throw Error(ErrorCode::kEmptyRepository, "repository has no videos");
  }
  const std::size_t n = videos.size();
  // The epsilon keeps e.g. 0.3 * 10 = 3.0000000000000004 from rounding up.
  auto take = static_cast<std::size_t>(
      std::ceil(fav_fraction * static_cast<double>(n) - 1e-9));
  take = std::clamp<std::size_t>(take, 1, n);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (videos[a].video_views != videos[b].video_views) {
      return videos[a].video_views > videos[b].video_views;
    }
    return videos[a].id < videos[b].id;
  });

  FavSelection sel;
  sel.fav_fraction = fav_fraction;
  sel.fav_video_ids.reserve(take);
  for (std::size_t r = 0; r < take; ++r) {
    const Video& v = videos[order[r]];
    sel.fav_video_ids.push_back(v.id);
    std::uint64_t max_views = 0;
    for (const Gop& g : v.gops) max_views = std::max(max_views, g.views);
    const double cutoff = gop_hotness_threshold * static_cast<double>(max_views);
    for (const Gop& g : v.gops) {
      if (static_cast<double>(g.views) >= cutoff) {
        sel.fav_gops.push_back(GopKey{v.id, g.index});
      }
    }
  }
  return sel;
}

void WriteRepository(const Repository& repo, std::ostream& out) {
  nlohmann::ordered_json header;
  header[kHeaderKey] = 1;
  header["period_days"] = repo.period_days();
  if (repo.synthesis_seed()) header["synthesis_seed"] = *repo.synthesis_seed();
  out << header.dump() << '\n';
  for (const Video& v : repo.videos()) {
    nlohmann::ordered_json rec;
    rec["id"] = v.id;
    rec["video_views"] = v.video_views;
    auto gops = nlohmann::ordered_json::array();
    for (const Gop& g : v.gops) {
      nlohmann::ordered_json gj;
      gj["size_mb"] = g.size_mb;
      gj["views"] = g.views;
      gj["transcode_time_s"] = g.transcode_time_s;
      gops.push_back(std::move(gj));
    }
    rec["gops"] = std::move(gops);
    out << rec.dump() << '\n';
  }
}

void SaveRepository(const Repository& repo, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write repository " + path.string());
  WriteRepository(repo, out);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

Repository ReadRepository(std::istream& in) {
  std::vector<Video> videos;
  std::optional<std::int64_t> seed;
  int period_days = Repository::kDefaultPeriodDays;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      ParseFailure(line_no, e.what());
    }
    if (!rec.is_object()) ParseFailure(line_no, "record is not an object");
    if (rec.contains(kHeaderKey)) {
      if (!videos.empty()) ParseFailure(line_no, "header after video records");
      try {
        period_days = rec.value("period_days", Repository::kDefaultPeriodDays);
        if (rec.contains("synthesis_seed")) {
          seed = rec["synthesis_seed"].get<std::int64_t>();
        }
      } catch (const nlohmann::json::exception& e) {
        ParseFailure(line_no, e.what());
      }
      continue;
    }
    try {
      Video v;
      v.id = rec.at("id").get<std::string>();
      v.video_views = AsCount(rec.at("video_views"), line_no);
      const auto& gops = rec.at("gops");
      if (!gops.is_array()) ParseFailure(line_no, "gops is not an array");
      v.gops.reserve(gops.size());
      int index = 0;
      for (const auto& gj : gops) {
        Gop g;
        g.index = index++;
        g.size_mb = gj.at("size_mb").get<double>();
        g.views = AsCount(gj.at("views"), line_no);
        g.transcode_time_s = gj.at("transcode_time_s").get<double>();
        v.gops.push_back(g);
      }
      videos.push_back(std::move(v));
    } catch (const nlohmann::json::exception& e) {
      ParseFailure(line_no, e.what());
    }
  }
  return Repository(std::move(videos), seed, period_days);
}

Repository LoadRepository(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open repository " + path.string());
  return ReadRepository(in);
}

}  // namespace goptier
