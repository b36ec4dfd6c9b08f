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

#include "goptier/cost.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "goptier/error.hpp"

namespace goptier {
namespace {

constexpr double kMbPerGb = 1024.0;
constexpr double kSecondsPerHour = 3600.0;

bool NearlyEqual(double a, double b) {
  return std::fabs(a - b) <= 1e-9 * std::max({1e-12, std::fabs(a), std::fabs(b)});
}

// Which GOPs a policy keeps in storage; everything else is re-transcoded.
using StoredMask = std::vector<std::vector<char>>;

StoredMask EmptyMask(const Repository& repo) {
  StoredMask mask;
  mask.reserve(repo.videos().size());
  for (const Video& v : repo.videos()) mask.emplace_back(v.gops.size(), 0);
  return mask;
}

struct ResolvedSelection {
  std::vector<std::size_t> fav_videos;  // positions in repo.videos()
  StoredMask fav_gops;
};

ResolvedSelection Resolve(const Repository& repo, const FavSelection& favs) {
  const auto& videos = repo.videos();
  std::unordered_map<std::string_view, std::size_t> position;
  position.reserve(videos.size());
  for (std::size_t i = 0; i < videos.size(); ++i) position.emplace(videos[i].id, i);

  ResolvedSelection out;
  out.fav_gops = EmptyMask(repo);
  std::vector<char> is_fav(videos.size(), 0);
  for (const std::string& id : favs.fav_video_ids) {
    auto it = position.find(id);
    if (it == position.end()) {
      throw Error(ErrorCode::kInconsistentSelection,
                  "FAV video '" + id + "' is not in the repository");
    }
    if (is_fav[it->second]) {
      throw Error(ErrorCode::kInconsistentSelection, "FAV video '" + id + "' listed twice");
    }
    is_fav[it->second] = 1;
    out.fav_videos.push_back(it->second);
  }
  for (const GopKey& key : favs.fav_gops) {
    auto it = position.find(key.video_id);
    if (it == position.end() || !is_fav[it->second]) {
      throw Error(ErrorCode::kInconsistentSelection,
                  "FAV GOP of '" + key.video_id + "' does not belong to a FAV video");
    }
    const auto& gops = videos[it->second].gops;
    if (key.index < 0 || static_cast<std::size_t>(key.index) >= gops.size()) {
      throw Error(ErrorCode::kInconsistentSelection,
                  "FAV GOP index " + std::to_string(key.index) + " out of range for '" +
                      key.video_id + "'");
    }
    out.fav_gops[it->second][static_cast<std::size_t>(key.index)] = 1;
  }
  return out;
}

double ComputeForUnstored(const Repository& repo, const StoredMask& stored, double rate) {
  double compute = 0.0;
  const auto& videos = repo.videos();
  for (std::size_t v = 0; v < videos.size(); ++v) {
    for (std::size_t g = 0; g < videos[v].gops.size(); ++g) {
      if (!stored[v][g]) compute += TranscodeCost(videos[v].gops[g], rate);
    }
  }
  return compute;
}

struct ClusterItem {
  double views = 0.0;
  std::vector<double> sizes_mb;
};

// Clusters items by views and prices each cluster at its tier. Fewer items
// than k (or Lloyd leaving a cluster empty) degrades to one tier per
// non-empty cluster, hottest first.
std::vector<ClusterCost> ClusterAndPrice(const std::vector<ClusterItem>& items,
                                         const PricingCatalog& catalog,
                                         const ClustererConfig& config,
                                         std::vector<ClusterDumpRow>* dump = nullptr) {
  if (items.empty()) return {};
  std::vector<double> views;
  views.reserve(items.size());
  for (const ClusterItem& it : items) views.push_back(it.views);

  const int k = std::min<int>(config.k, static_cast<int>(items.size()));
  Clustering clustering =
      config.method == ClustererConfig::Method::kExact
          ? KMeans1DExact(views, k)
          : KMeansLloyd(views, k, config.lloyd_max_iters, config.lloyd_seed);

  std::vector<TierId> label_tier(static_cast<std::size_t>(clustering.k), TierId::kStandard);
  const bool degenerate =
      clustering.k != config.k ||
      std::any_of(clustering.sizes.begin(), clustering.sizes.end(),
                  [](std::size_t s) { return s == 0; });
  if (!degenerate) {
    label_tier = AssignTiers(clustering, catalog).cluster_to_tier;
  } else {
    std::vector<int> by_heat;
    for (int c = 0; c < clustering.k; ++c) {
      if (clustering.sizes[c] > 0) by_heat.push_back(c);
    }
    std::stable_sort(by_heat.begin(), by_heat.end(), [&](int a, int b) {
      return clustering.centroids[a] > clustering.centroids[b];
    });
    if (by_heat.size() > catalog.tiers().size()) {
      throw Error(ErrorCode::kClusterCountMismatch, "more clusters than catalog tiers");
    }
    for (std::size_t pos = 0; pos < by_heat.size(); ++pos) {
      label_tier[by_heat[pos]] = catalog.by_rank(static_cast<int>(pos) + 1).id;
    }
  }

  if (dump != nullptr) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      (*dump)[i].label = clustering.labels[i];
      (*dump)[i].tier = label_tier[clustering.labels[i]];
    }
  }

  std::vector<std::vector<double>> sizes(static_cast<std::size_t>(clustering.k));
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto& dst = sizes[clustering.labels[i]];
    dst.insert(dst.end(), items[i].sizes_mb.begin(), items[i].sizes_mb.end());
  }
  std::vector<ClusterCost> out;
  for (int c = 0; c < clustering.k; ++c) {
    if (clustering.sizes[c] == 0) continue;
    ClusterCost cc;
    cc.label = c;
    cc.tier = label_tier[c];
    cc.members = clustering.sizes[c];
    cc.size_mb = std::accumulate(sizes[c].begin(), sizes[c].end(), 0.0);
    cc.centroid_views = clustering.centroids[c];
    cc.storage_usd = ClusterStorageCost(sizes[c], catalog.price(cc.tier));
    out.push_back(cc);
  }
  std::sort(out.begin(), out.end(), [&](const ClusterCost& a, const ClusterCost& b) {
    return catalog.by_id(a.tier).rank < catalog.by_id(b.tier).rank;
  });
  return out;
}

void AddClusters(CostBreakdown& b, std::vector<ClusterCost> clusters) {
  for (const ClusterCost& c : clusters) {
    b.per_tier_usd[static_cast<std::size_t>(c.tier)] += c.storage_usd;
    b.storage_usd += c.storage_usd;
  }
  b.per_cluster = std::move(clusters);
}

}  // namespace

std::string_view PolicyName(PolicyId policy) noexcept {
  switch (policy) {
    case PolicyId::kFullPreTranscoding: return "full-pre";
    case PolicyId::kFullReTranscoding: return "full-re";
    case PolicyId::kPartialPreTranscoding: return "partial-pre";
    case PolicyId::kVideoClustering: return "video-clustering";
    case PolicyId::kGopClustering: return "gop-clustering";
  }
  return "unknown";
}

std::optional<PolicyId> ParsePolicyName(std::string_view name) noexcept {
  for (PolicyId p : kAllPolicies) {
    if (PolicyName(p) == name) return p;
  }
  return std::nullopt;
}

double ClusterStorageCost(std::span<const double> gop_sizes_mb, double tier_price) {
  if (!(tier_price > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tier price must be > 0");
  }
  double total_mb = 0.0;
  for (double s : gop_sizes_mb) {
    if (s < 0.0 || std::isnan(s)) {
      throw Error(ErrorCode::kNegativeSize, "GOP size must be non-negative");
    }
    total_mb += s;
  }
  return total_mb * tier_price / kMbPerGb;
}

double TranscodeCost(const Gop& gop, double vm_hourly_rate) {
  return static_cast<double>(gop.views) * gop.transcode_time_s * vm_hourly_rate /
         kSecondsPerHour;
}

CostBreakdown EvaluatePolicy(PolicyId policy, const Repository& repo,
                             const FavSelection& favs, const PricingCatalog& catalog,
                             const ClustererConfig& clusterer) {
  const ResolvedSelection sel = Resolve(repo, favs);
  const auto& videos = repo.videos();
  const double rate = catalog.vm_hourly_rate();
  const StorageTier& top = catalog.by_rank(1);

  CostBreakdown b;
  b.policy = policy;
  StoredMask stored = EmptyMask(repo);

  switch (policy) {
    case PolicyId::kFullPreTranscoding: {
      std::vector<double> sizes;
      for (std::size_t v = 0; v < videos.size(); ++v) {
        for (std::size_t g = 0; g < videos[v].gops.size(); ++g) {
          sizes.push_back(videos[v].gops[g].size_mb);
          stored[v][g] = 1;
        }
      }
      b.storage_usd = ClusterStorageCost(sizes, top.price_per_gb_month);
      b.per_tier_usd[static_cast<std::size_t>(top.id)] = b.storage_usd;
      break;
    }
    case PolicyId::kFullReTranscoding:
      break;
    case PolicyId::kPartialPreTranscoding: {
      std::vector<double> sizes;
      for (std::size_t v = 0; v < videos.size(); ++v) {
        for (std::size_t g = 0; g < videos[v].gops.size(); ++g) {
          if (sel.fav_gops[v][g]) sizes.push_back(videos[v].gops[g].size_mb);
        }
      }
      stored = sel.fav_gops;
      b.storage_usd = ClusterStorageCost(sizes, top.price_per_gb_month);
      b.per_tier_usd[static_cast<std::size_t>(top.id)] = b.storage_usd;
      break;
    }
    case PolicyId::kVideoClustering: {
      std::vector<ClusterItem> items;
      items.reserve(sel.fav_videos.size());
      for (std::size_t v : sel.fav_videos) {
        ClusterItem item;
        item.views = static_cast<double>(videos[v].video_views);
        for (const Gop& g : videos[v].gops) item.sizes_mb.push_back(g.size_mb);
        std::fill(stored[v].begin(), stored[v].end(), 1);
        items.push_back(std::move(item));
      }
      AddClusters(b, ClusterAndPrice(items, catalog, clusterer));
      break;
    }
    case PolicyId::kGopClustering: {
      std::vector<ClusterItem> items;
      for (std::size_t v = 0; v < videos.size(); ++v) {
        for (std::size_t g = 0; g < videos[v].gops.size(); ++g) {
          if (!sel.fav_gops[v][g]) continue;
          const Gop& gop = videos[v].gops[g];
          items.push_back(ClusterItem{static_cast<double>(gop.views), {gop.size_mb}});
        }
      }
      stored = sel.fav_gops;
      AddClusters(b, ClusterAndPrice(items, catalog, clusterer));
      break;
    }
  }
  b.compute_usd = ComputeForUnstored(repo, stored, rate);
  b.total_usd = b.storage_usd + b.compute_usd;
  return b;
}

std::vector<ClusterDumpRow> ClusterFavGops(const Repository& repo,
                                           const FavSelection& favs,
                                           const PricingCatalog& catalog,
                                           const ClustererConfig& clusterer) {
  const ResolvedSelection sel = Resolve(repo, favs);
  const auto& videos = repo.videos();
  std::vector<ClusterItem> items;
  std::vector<ClusterDumpRow> rows;
  for (std::size_t v = 0; v < videos.size(); ++v) {
    for (std::size_t g = 0; g < videos[v].gops.size(); ++g) {
      if (!sel.fav_gops[v][g]) continue;
      const Gop& gop = videos[v].gops[g];
      items.push_back(ClusterItem{static_cast<double>(gop.views), {gop.size_mb}});
      rows.push_back(ClusterDumpRow{videos[v].id, gop.index, gop.size_mb, gop.views, 0,
                                    TierId::kStandard});
    }
  }
  ClusterAndPrice(items, catalog, clusterer, &rows);
  return rows;
}

double TotalCost(std::span<const CostBreakdown> breakdowns) {
  if (breakdowns.empty()) throw Error(ErrorCode::kEmptyInput, "no cost breakdowns to sum");
  std::vector<double> totals;
  totals.reserve(breakdowns.size());
  for (const CostBreakdown& b : breakdowns) totals.push_back(b.total_usd);
  std::sort(totals.begin(), totals.end());
  return std::accumulate(totals.begin(), totals.end(), 0.0);
}

void CheckBreakdown(const CostBreakdown& b, bool require_tier_split) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "cost breakdown invariant violated: " + what);
  };
  if (b.storage_usd < 0.0 || b.compute_usd < 0.0 || b.total_usd < 0.0) {
    fail("negative component");
  }
  if (!NearlyEqual(b.total_usd, b.storage_usd + b.compute_usd)) {
    fail("total != storage + compute");
  }
  if (require_tier_split) {
    double tiers = 0.0;
    for (double t : b.per_tier_usd) {
      if (t < 0.0) fail("negative tier cost");
      tiers += t;
    }
    if (!NearlyEqual(b.storage_usd, tiers)) fail("storage != sum of per-tier costs");
  }
}

}  // namespace goptier
