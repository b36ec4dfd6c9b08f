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

#include "goptier/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "goptier/error.hpp"
#include "goptier/random.hpp"

namespace goptier {
namespace {

void CheckInput(std::span<const double> values, int k) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "no values to cluster");
  if (k < 1 || static_cast<std::size_t>(k) > values.size()) {
    throw Error(ErrorCode::kBadK, "k=" + std::to_string(k) + " must be in [1, " +
                                      std::to_string(values.size()) + "]");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "values must be finite");
    }
  }
}

// Fills centroids, sizes and objective from labels.
void Summarise(std::span<const double> values, Clustering& c) {
  c.centroids.assign(static_cast<std::size_t>(c.k), 0.0);
  c.sizes.assign(static_cast<std::size_t>(c.k), 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    c.centroids[c.labels[i]] += values[i];
    ++c.sizes[c.labels[i]];
  }
  for (int j = 0; j < c.k; ++j) {
    if (c.sizes[j] > 0) c.centroids[j] /= static_cast<double>(c.sizes[j]);
  }
  c.objective = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - c.centroids[c.labels[i]];
    c.objective += d * d;
  }
}

// Sum of squared deviations of sorted[j..i] from their mean, via prefix sums
// of mean-centred values.
class SegmentCost {
 public:
  explicit SegmentCost(const std::vector<double>& sorted)
      : s1_(sorted.size() + 1, 0.0), s2_(sorted.size() + 1, 0.0) {
    const double shift =
        std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const double x = sorted[i] - shift;
      s1_[i + 1] = s1_[i] + x;
      s2_[i + 1] = s2_[i] + x * x;
    }
  }

  double operator()(std::size_t j, std::size_t i) const {
    const double n = static_cast<double>(i - j + 1);
    const double sum = s1_[i + 1] - s1_[j];
    const double cost = (s2_[i + 1] - s2_[j]) - sum * sum / n;
    return cost > 0.0 ? cost : 0.0;
  }

 private:
  std::vector<double> s1_;
  std::vector<double> s2_;
};

// One layer of the DP: cur[i] = min_{j in [layer, i]} prev[j-1] + cost(j, i),
// filled for i in [lo, hi] knowing the optimal j lies in [opt_lo, opt_hi].
void FillLayer(const SegmentCost& cost, const std::vector<double>& prev,
               std::vector<double>& cur, std::vector<std::size_t>& arg,
               std::size_t layer, std::ptrdiff_t lo, std::ptrdiff_t hi,
               std::size_t opt_lo, std::size_t opt_hi) {
  while (lo <= hi) {
    const std::size_t mid = static_cast<std::size_t>(lo + (hi - lo) / 2);
    const std::size_t first = std::max(layer, opt_lo);
    const std::size_t last = std::min(mid, opt_hi);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = first;
    for (std::size_t j = first; j <= last; ++j) {
      const double v = prev[j - 1] + cost(j, mid);
      if (v < best) {
        best = v;
        best_j = j;
      }
    }
    cur[mid] = best;
    arg[mid] = best_j;
    // Recurse on the left half, loop on the right half.
    FillLayer(cost, prev, cur, arg, layer, lo, static_cast<std::ptrdiff_t>(mid) - 1,
              opt_lo, best_j);
    lo = static_cast<std::ptrdiff_t>(mid) + 1;
    opt_lo = best_j;
  }
}

}  // namespace

Clustering KMeans1DExact(std::span<const double> values, int k) {
  CheckInput(values, k);
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = values[order[i]];

  const SegmentCost cost(sorted);
  const auto layers = static_cast<std::size_t>(k);
  // start[m][i]: first sorted index of cluster m when clusters 0..m cover 0..i.
  std::vector<std::vector<std::size_t>> start(layers, std::vector<std::size_t>(n, 0));
  std::vector<double> prev(n), cur(n);
  for (std::size_t i = 0; i < n; ++i) prev[i] = cost(0, i);
  for (std::size_t m = 1; m < layers; ++m) {
    std::fill(cur.begin(), cur.end(), std::numeric_limits<double>::infinity());
    FillLayer(cost, prev, cur, start[m], m, static_cast<std::ptrdiff_t>(m),
              static_cast<std::ptrdiff_t>(n) - 1, m, n - 1);
    std::swap(prev, cur);
  }

  Clustering result;
  result.k = k;
  result.labels.assign(n, 0);
  std::size_t end = n;  // exclusive
  for (std::size_t m = layers; m-- > 0;) {
    const std::size_t begin = (m == 0) ? 0 : start[m][end - 1];
    for (std::size_t s = begin; s < end; ++s) result.labels[order[s]] = static_cast<int>(m);
    end = begin;
  }
  Summarise(values, result);
  return result;
}

Clustering KMeansLloyd(std::span<const double> values, int k, int max_iters,
                       std::uint64_t seed) {
  CheckInput(values, k);
  if (max_iters < 1) throw Error(ErrorCode::kInvalidArgument, "max_iters must be >= 1");
  const std::size_t n = values.size();
  RandomStream rng(seed);

  // k-means++ seeding.
  std::vector<double> centers;
  centers.reserve(static_cast<std::size_t>(k));
  centers.push_back(values[static_cast<std::size_t>(
      rng.UniformInt(0, static_cast<std::int64_t>(n) - 1))]);
  std::vector<double> d2(n);
  while (centers.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (double c : centers) best = std::min(best, (values[i] - c) * (values[i] - c));
      d2[i] = best;
      total += best;
    }
    std::size_t pick = n - 1;
    if (total > 0.0) {
      const double target = rng.NextUnit() * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (d2[i] > 0.0 && acc > target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<std::size_t>(rng.UniformInt(0, static_cast<std::int64_t>(n) - 1));
    }
    centers.push_back(values[pick]);
  }

  Clustering result;
  result.k = k;
  result.labels.assign(n, -1);
  auto assign = [&]() {
    bool changed = false;
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (values[i] - centers[0]) * (values[i] - centers[0]);
      for (int c = 1; c < k; ++c) {
        const double d = (values[i] - centers[c]) * (values[i] - centers[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (result.labels[i] != best) changed = true;
      result.labels[i] = best;
      objective += best_d;
    }
    return std::pair{changed, objective};
  };

  auto [changed, objective] = assign();
  result.objective_history.push_back(objective);
  for (int iter = 0; iter < max_iters; ++iter) {
    std::vector<double> sum(static_cast<std::size_t>(k), 0.0);
    std::vector<std::size_t> count(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[result.labels[i]] += values[i];
      ++count[result.labels[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (count[c] > 0) centers[c] = sum[c] / static_cast<double>(count[c]);
    }
    ++result.iterations;
    std::tie(changed, objective) = assign();
    result.objective_history.push_back(objective);
    if (!changed) break;
  }
  Summarise(values, result);
  return result;
}

double ClusteringObjective(std::span<const double> values, std::span<const int> labels,
                           int k) {
  if (values.size() != labels.size()) {
    throw Error(ErrorCode::kInvalidArgument, "values and labels differ in length");
  }
  std::vector<double> sum(static_cast<std::size_t>(k), 0.0);
  std::vector<std::size_t> count(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= k) {
      throw Error(ErrorCode::kInvalidArgument, "label out of range");
    }
    sum[labels[i]] += values[i];
    ++count[labels[i]];
  }
  double objective = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double mean = sum[labels[i]] / static_cast<double>(count[labels[i]]);
    objective += (values[i] - mean) * (values[i] - mean);
  }
  return objective;
}

TierAssignment AssignTiers(const Clustering& clustering, const PricingCatalog& catalog) {
  const auto tiers = static_cast<int>(catalog.tiers().size());
  if (clustering.k != tiers || static_cast<int>(clustering.centroids.size()) != tiers) {
    throw Error(ErrorCode::kClusterCountMismatch,
                "clustering has " + std::to_string(clustering.k) + " clusters but catalog has " +
                    std::to_string(tiers) + " tiers");
  }
  for (int c = 0; c < clustering.k; ++c) {
    if (c >= static_cast<int>(clustering.sizes.size()) || clustering.sizes[c] == 0) {
      throw Error(ErrorCode::kEmptyCluster, "cluster " + std::to_string(c) + " is empty");
    }
  }
  std::vector<int> by_heat(static_cast<std::size_t>(clustering.k));
  std::iota(by_heat.begin(), by_heat.end(), 0);
  std::stable_sort(by_heat.begin(), by_heat.end(), [&](int a, int b) {
    return clustering.centroids[a] > clustering.centroids[b];
  });
  TierAssignment out;
  out.cluster_to_tier.resize(static_cast<std::size_t>(clustering.k));
  for (int pos = 0; pos < clustering.k; ++pos) {
    out.cluster_to_tier[by_heat[pos]] = catalog.by_rank(pos + 1).id;
  }
  return out;
}

}  // namespace goptier
