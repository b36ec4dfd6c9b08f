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

#ifndef GOPTIER_COST_HPP_
#define GOPTIER_COST_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "goptier/clustering.hpp"
#include "goptier/pricing.hpp"
#include "goptier/repository.hpp"

namespace goptier {

enum class PolicyId {
  kFullPreTranscoding,
  kFullReTranscoding,
  kPartialPreTranscoding,
  kVideoClustering,
  kGopClustering,
};

inline constexpr std::array<PolicyId, 5> kAllPolicies = {
    PolicyId::kFullReTranscoding, PolicyId::kFullPreTranscoding,
    PolicyId::kPartialPreTranscoding, PolicyId::kVideoClustering,
    PolicyId::kGopClustering};

// Command-line / CSV names: full-pre, full-re, partial-pre, video-clustering,
// gop-clustering.
std::string_view PolicyName(PolicyId policy) noexcept;
std::optional<PolicyId> ParsePolicyName(std::string_view name) noexcept;

// One stored cluster of the two clustering policies.
struct ClusterCost {
  int label = 0;
  TierId tier = TierId::kStandard;
  std::size_t members = 0;  // GOPs or videos
  double size_mb = 0.0;
  double centroid_views = 0.0;
  double storage_usd = 0.0;
};

struct CostBreakdown {
  PolicyId policy = PolicyId::kFullPreTranscoding;
  double storage_usd = 0.0;
  double compute_usd = 0.0;
  double total_usd = 0.0;
  std::array<double, kTierCount> per_tier_usd{};  // indexed by TierId
  // Ordered by tier rank, so per_cluster[0] is the cluster on the rank-1
  // tier. Empty for the non-clustering policies.
  std::vector<ClusterCost> per_cluster;
};

// Monthly storage cost of one cluster: sum(size_mb) * price / 1024.
double ClusterStorageCost(std::span<const double> gop_sizes_mb, double tier_price);

// Re-transcoding every access of the period: views * time * rate / 3600.
double TranscodeCost(const Gop& gop, double vm_hourly_rate);

struct ClustererConfig {
  enum class Method { kExact, kLloyd };
  Method method = Method::kExact;
  int k = kDefaultClusterCount;
  int lloyd_max_iters = 100;
  std::uint64_t lloyd_seed = 1;
};

CostBreakdown EvaluatePolicy(PolicyId policy, const Repository& repo,
                             const FavSelection& favs, const PricingCatalog& catalog,
                             const ClustererConfig& clusterer = {});

// Per-GOP labels of the GopClustering placement, in repository order.
struct ClusterDumpRow {
  std::string video_id;
  int gop_index = 0;
  double size_mb = 0.0;
  std::uint64_t views = 0;
  int label = 0;
  TierId tier = TierId::kStandard;
};

std::vector<ClusterDumpRow> ClusterFavGops(const Repository& repo,
                                           const FavSelection& favs,
                                           const PricingCatalog& catalog,
                                           const ClustererConfig& clusterer = {});

double TotalCost(std::span<const CostBreakdown> breakdowns);

// Throws Error(kInvalidArgument) naming the first violated invariant:
// total = storage + compute, storage = sum(per_tier) and non-negativity.
// `require_tier_split` skips the per-tier check when false (rows carrying
// only totals).
void CheckBreakdown(const CostBreakdown& b, bool require_tier_split = true);

}  // namespace goptier

#endif  // GOPTIER_COST_HPP_
