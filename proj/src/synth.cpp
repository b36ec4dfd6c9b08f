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

#include "goptier/synth.hpp"

#include <cmath>
#include <string>
#include <type_traits>

#include "goptier/error.hpp"
#include "goptier/random.hpp"
#include <nlohmann/json.hpp>

namespace goptier {
namespace {

[[noreturn]] void InvalidSpec(const std::string& what) {
  throw Error(ErrorCode::kInvalidSpec, "invalid synth spec: " + what);
}

template <typename T>
void CheckRange(const Range<T>& r, const char* name) {
  if (!(r.min > 0)) InvalidSpec(std::string(name) + " lower bound must be > 0");
  if (!(r.min <= r.max)) InvalidSpec(std::string(name) + " needs min <= max");
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(r.max)) InvalidSpec(std::string(name) + " must be finite");
  }
}

std::string VideoId(std::int64_t rank, int width) {
  std::string digits = std::to_string(rank);
  if (static_cast<int>(digits.size()) < width) {
    digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  }
  return "v" + digits;
}

template <typename T>
void ReadRange(const nlohmann::json& doc, const char* key, Range<T>& out) {
  if (!doc.contains(key)) return;
  const auto& j = doc[key];
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    InvalidSpec(std::string(key) + " must be a [min, max] pair");
  }
  out = Range<T>{j[0].get<T>(), j[1].get<T>()};
}

template <typename T>
void ReadScalar(const nlohmann::json& doc, const char* key, T& out) {
  if (!doc.contains(key)) return;
  const auto& j = doc[key];
  if (!j.is_number()) InvalidSpec(std::string(key) + " must be a number");
  if constexpr (std::is_integral_v<T>) {
    if (!j.is_number_integer()) InvalidSpec(std::string(key) + " must be an integer");
  }
  out = j.get<T>();
}

}  // namespace

void SynthSpec::Validate() const {
  if (video_count < 1) InvalidSpec("video_count must be >= 1");
  CheckRange(gop_count_range, "gop_count_range");
  CheckRange(gop_size_mb_range, "gop_size_mb_range");
  CheckRange(transcode_time_s_range, "transcode_time_s_range");
  if (!(video_popularity_exponent > 0.0) || !std::isfinite(video_popularity_exponent)) {
    InvalidSpec("video_popularity_exponent must be > 0");
  }
  if (!(intra_video_decay > 0.0 && intra_video_decay < 1.0)) {
    InvalidSpec("intra_video_decay must be in (0, 1)");
  }
  if (!(random_spike_prob >= 0.0 && random_spike_prob <= 1.0)) {
    InvalidSpec("random_spike_prob must be in [0, 1]");
  }
  if (max_video_views < 0) InvalidSpec("max_video_views must be >= 0");
  if (period_days <= 0) InvalidSpec("period_days must be > 0");
}

Repository Synthesize(const SynthSpec& spec) {
  spec.Validate();
  RandomStream rng(static_cast<std::uint64_t>(spec.seed));
  const int id_width = static_cast<int>(std::to_string(spec.video_count).size());

  std::vector<Video> videos;
  videos.reserve(static_cast<std::size_t>(spec.video_count));
  for (std::int64_t rank = 1; rank <= spec.video_count; ++rank) {
    Video v;
    v.id = VideoId(rank, id_width);
    v.video_views = static_cast<std::uint64_t>(std::llround(
        static_cast<double>(spec.max_video_views) /
        std::pow(static_cast<double>(rank), spec.video_popularity_exponent)));

    const auto gop_count =
        rng.UniformInt(spec.gop_count_range.min, spec.gop_count_range.max);
    v.gops.reserve(static_cast<std::size_t>(gop_count));
    double expected = static_cast<double>(v.video_views);
    for (std::int64_t i = 0; i < gop_count; ++i) {
      Gop g;
      g.index = static_cast<int>(i);
      g.size_mb = rng.Uniform(spec.gop_size_mb_range.min, spec.gop_size_mb_range.max);
      g.transcode_time_s =
          rng.Uniform(spec.transcode_time_s_range.min, spec.transcode_time_s_range.max);
      const bool spike = rng.NextUnit() < spec.random_spike_prob;
      const auto spike_views = static_cast<std::uint64_t>(
          rng.UniformInt(0, static_cast<std::int64_t>(v.video_views)));
      g.views = (spike && i > 0) ? spike_views
                                 : static_cast<std::uint64_t>(std::llround(expected));
      if (g.views > v.video_views) g.views = v.video_views;
      v.gops.push_back(g);
      expected *= spec.intra_video_decay;
    }
    videos.push_back(std::move(v));
  }
  return Repository(std::move(videos), spec.seed, spec.period_days);
}

SynthSpec ParseSynthSpec(std::string_view json_text, const SynthSpec& base) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    InvalidSpec(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) InvalidSpec("top level must be an object");
  SynthSpec s = base;
  ReadScalar(doc, "video_count", s.video_count);
  ReadScalar(doc, "seed", s.seed);
  ReadRange(doc, "gop_count_range", s.gop_count_range);
  ReadRange(doc, "gop_size_mb_range", s.gop_size_mb_range);
  ReadRange(doc, "transcode_time_s_range", s.transcode_time_s_range);
  ReadScalar(doc, "video_popularity_exponent", s.video_popularity_exponent);
  ReadScalar(doc, "intra_video_decay", s.intra_video_decay);
  ReadScalar(doc, "random_spike_prob", s.random_spike_prob);
  ReadScalar(doc, "max_video_views", s.max_video_views);
  ReadScalar(doc, "period_days", s.period_days);
  return s;
}

std::string SerializeSynthSpec(const SynthSpec& spec) {
  nlohmann::ordered_json doc;
  doc["video_count"] = spec.video_count;
  doc["seed"] = spec.seed;
  doc["gop_count_range"] = {spec.gop_count_range.min, spec.gop_count_range.max};
  doc["gop_size_mb_range"] = {spec.gop_size_mb_range.min, spec.gop_size_mb_range.max};
  doc["transcode_time_s_range"] = {spec.transcode_time_s_range.min,
                                   spec.transcode_time_s_range.max};
  doc["video_popularity_exponent"] = spec.video_popularity_exponent;
  doc["intra_video_decay"] = spec.intra_video_decay;
  doc["random_spike_prob"] = spec.random_spike_prob;
  doc["max_video_views"] = spec.max_video_views;
  doc["period_days"] = spec.period_days;
  return doc.dump(2) + "\n";
}

}  // namespace goptier
