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

#ifndef GOPTIER_CLUSTERING_HPP_
#define GOPTIER_CLUSTERING_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "goptier/pricing.hpp"

namespace goptier {

inline constexpr int kDefaultClusterCount = 4;

// Partition of a list of 1-D values. labels[i] is the cluster of values[i].
struct Clustering {
  int k = 0;
  std::vector<int> labels;
  std::vector<double> centroids;  // mean of the values labelled c; 0 if empty
  std::vector<std::size_t> sizes;
  double objective = 0.0;  // within-cluster sum of squared deviations

  // Lloyd only: objective after seeding and after every iteration.
  std::vector<double> objective_history;
  int iterations = 0;
};

// Globally optimal k-means in one dimension. Dynamic programme over the
// sorted values with divide-and-conquer row minimisation, O(k n log n).
// Labels are contiguous in sorted order: label 0 holds the smallest values.
// Throws Error(kEmptyInput) or Error(kBadK) unless 1 <= k <= values.size().
Clustering KMeans1DExact(std::span<const double> values, int k);

// Lloyd's iterations from k-means++ seeding driven by RandomStream(seed).
// Stops when assignments stop changing or after max_iters iterations.
Clustering KMeansLloyd(std::span<const double> values, int k, int max_iters,
                       std::uint64_t seed);

// Within-cluster sum of squares of a labelling. Independent of either solver.
double ClusteringObjective(std::span<const double> values, std::span<const int> labels,
                           int k);

// cluster_to_tier[c] is the tier holding cluster c.
struct TierAssignment {
  std::vector<TierId> cluster_to_tier;
};

// Highest centroid goes to the rank-1 tier, next to rank 2, and so on. Equal
// centroids: the lower label takes the more expensive tier. Requires exactly
// as many clusters as catalog tiers, all non-empty.
TierAssignment AssignTiers(const Clustering& clustering, const PricingCatalog& catalog);

}  // namespace goptier

#endif  // GOPTIER_CLUSTERING_HPP_
