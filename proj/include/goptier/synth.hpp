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

#ifndef GOPTIER_SYNTH_HPP_
#define GOPTIER_SYNTH_HPP_

#include <cstdint>
#include <string_view>

#include "goptier/repository.hpp"

namespace goptier {

template <typename T>
struct Range {
  T min;
  T max;

  bool operator==(const Range&) const = default;
};

// Parameters of the long-tail repository generator. The defaults are the
// 1,000-video preset used for quick sweeps; LargePreset() switches to 50,000.
struct SynthSpec {
  std::int64_t video_count = 1000;
  std::int64_t seed = 1;
  Range<std::int64_t> gop_count_range{20, 120};
  Range<double> gop_size_mb_range{0.5, 2.0};
  Range<double> transcode_time_s_range{0.5, 3.0};
  double video_popularity_exponent = 0.8;
  double intra_video_decay = 0.9;
  double random_spike_prob = 0.1;
  std::int64_t max_video_views = 1'000'000;
  int period_days = Repository::kDefaultPeriodDays;

  static SynthSpec SmallPreset() { return SynthSpec{}; }
  static SynthSpec LargePreset() {
    SynthSpec s;
    s.video_count = 50'000;
    return s;
  }

  // Throws Error(kInvalidSpec) describing the first violated constraint.
  void Validate() const;

  bool operator==(const SynthSpec&) const = default;
};

// Draw order, all from one RandomStream(seed):
//   for each video in popularity rank order j = 1..video_count:
//     gop_count                          UniformInt(gop_count_range)
//     for each GOP i = 0..gop_count-1:
//       size_mb                          Uniform(gop_size_mb_range)
//       transcode_time_s                 Uniform(transcode_time_s_range)
//       spike coin                       NextUnit() < random_spike_prob
//       spike value                      UniformInt(0, video_views)
// Both spike draws happen for every GOP whatever the coin shows. GOP 0
// carries video_views and ignores its spike.
//
// video_views(j) = round(max_video_views / j^exponent); GOP i gets
// round(video_views * decay^i) views unless spiked.
Repository Synthesize(const SynthSpec& spec);

// JSON object with any subset of the SynthSpec field names; missing fields
// keep the values of `base`. Range fields are two-element arrays.
SynthSpec ParseSynthSpec(std::string_view json_text, const SynthSpec& base = {});
std::string SerializeSynthSpec(const SynthSpec& spec);

}  // namespace goptier

#endif  // GOPTIER_SYNTH_HPP_
