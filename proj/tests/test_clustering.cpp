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
#include <limits>
#include <random>

#include "goptier/clustering.hpp"
#include "goptier/error.hpp"

namespace goptier {
namespace {

double Sse(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  double mean = 0.0;
  for (std::size_t i = lo; i < hi; ++i) mean += v[i];
  mean /= static_cast<double>(hi - lo);
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += (v[i] - mean) * (v[i] - mean);
  return s;
}

// Exhaustive search over every split of the sorted values into k runs.
double BruteForce(std::vector<double> v, int k) {
  std::sort(v.begin(), v.end());
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> cuts;
  auto recurse = [&](auto&& self, std::size_t start, int left) -> void {
    if (left == 1) {
      double total = 0.0;
      std::size_t lo = 0;
      for (std::size_t c : cuts) {
        total += Sse(v, lo, c);
        lo = c;
      }
      best = std::min(best, total + Sse(v, lo, v.size()));
      return;
    }
    for (std::size_t c = start + 1; c + static_cast<std::size_t>(left - 1) <= v.size(); ++c) {
      cuts.push_back(c);
      self(self, c, left - 1);
      cuts.pop_back();
    }
  };
  recurse(recurse, 0, k);
  return best;
}

bool Close(double a, double b) {
  return std::fabs(a - b) <= 1e-9 * std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
}

Clustering Fixed(std::vector<double> centroids) {
  Clustering c;
  c.k = static_cast<int>(centroids.size());
  for (int i = 0; i < c.k; ++i) c.labels.push_back(i);
  c.sizes.assign(centroids.size(), 1);
  c.centroids = std::move(centroids);
  return c;
}

TEST(KMeansExactTest, SeparatesObviousGroups) {
  const std::vector<double> v{1, 2, 10, 11, 50, 51, 100, 101};
  const Clustering c = KMeans1DExact(v, 4);
  EXPECT_EQ(c.labels, (std::vector<int>{0, 0, 1, 1, 2, 2, 3, 3}));
  EXPECT_EQ(c.sizes, (std::vector<std::size_t>{2, 2, 2, 2}));
  EXPECT_DOUBLE_EQ(c.objective, 2.0);
  EXPECT_DOUBLE_EQ(c.centroids[3], 100.5);
}

TEST(KMeansExactTest, KEqualsNGivesSingletons) {
  const std::vector<double> v{9, 3, 7, 1};
  const Clustering c = KMeans1DExact(v, 4);
  EXPECT_EQ(c.labels, (std::vector<int>{3, 1, 2, 0}));
  EXPECT_EQ(c.objective, 0.0);
}

TEST(KMeansExactTest, RepeatedValuesStayTogether) {
  const std::vector<double> v{0, 0, 0, 10};
  const Clustering c = KMeans1DExact(v, 2);
  EXPECT_EQ(c.labels, (std::vector<int>{0, 0, 0, 1}));
  EXPECT_EQ(c.objective, 0.0);
}

TEST(KMeansExactTest, RejectsBadArguments) {
  const std::vector<double> none;
  const std::vector<double> three{1, 2, 3};
  try {
    KMeans1DExact(none, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
  for (int k : {0, 4}) {
    try {
      KMeans1DExact(three, k);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kBadK);
    }
  }
}

TEST(KMeansExactProperty, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 12)(rng);
    const int k = std::uniform_int_distribution<int>(1, std::min(4, n))(rng);
    std::vector<double> v(static_cast<std::size_t>(n));
    // Integers force ties; reals exercise the general case.
    const bool ints = trial % 2 == 0;
    for (double& x : v) {
      x = ints ? static_cast<double>(std::uniform_int_distribution<int>(0, 5)(rng))
               : std::uniform_real_distribution<double>(-1e3, 1e6)(rng);
    }
    const Clustering c = KMeans1DExact(v, k);
    ASSERT_TRUE(Close(c.objective, BruteForce(v, k))) << "trial " << trial;
    ASSERT_TRUE(Close(c.objective, ClusteringObjective(v, c.labels, k)));
  }
}

TEST(KMeansExactProperty, LabelsAreContiguousInSortedOrder) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(200);
    for (double& x : v) x = std::exponential_distribution<double>(1e-4)(rng);
    const Clustering c = KMeans1DExact(v, 4);
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[i] < v[j]) {
          ASSERT_LE(c.labels[i], c.labels[j]);
        }
      }
    }
  }
}

TEST(KMeansExactProperty, ScalingValuesKeepsLabels) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(50);
    for (double& x : v) x = std::uniform_real_distribution<double>(0, 1e5)(rng);
    const double s = std::uniform_real_distribution<double>(0.01, 100.0)(rng);
    std::vector<double> scaled = v;
    for (double& x : scaled) x *= s;
    EXPECT_EQ(KMeans1DExact(v, 4).labels, KMeans1DExact(scaled, 4).labels);
  }
}

TEST(KMeansLloydTest, SingleClusterIsTheMean) {
  const std::vector<double> v{1, 2, 3, 4};
  const Clustering c = KMeansLloyd(v, 1, 10, 1);
  EXPECT_DOUBLE_EQ(c.centroids[0], 2.5);
  EXPECT_DOUBLE_EQ(c.objective, 5.0);
}

TEST(KMeansLloydTest, ObjectiveNeverIncreases) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(300);
    for (double& x : v) x = std::lognormal_distribution<double>(8.0, 2.0)(rng);
    const Clustering c = KMeansLloyd(v, 4, 100, static_cast<std::uint64_t>(trial));
    ASSERT_FALSE(c.objective_history.empty());
    for (std::size_t i = 1; i < c.objective_history.size(); ++i) {
      ASSERT_LE(c.objective_history[i], c.objective_history[i - 1] * (1 + 1e-12));
    }
    EXPECT_TRUE(Close(c.objective, ClusteringObjective(v, c.labels, 4)));
  }
}

TEST(KMeansLloydTest, NeverBeatsTheExactSolver) {
  // Four view bands resembling a hot head and a long tail.
  std::mt19937_64 rng(32);
  std::vector<double> v;
  for (double centre : {8.2e6, 5.7e6, 3.4e6, 1.4e6}) {
    for (int i = 0; i < 40; ++i) v.push_back(centre + std::normal_distribution<double>(0, 2e5)(rng));
  }
  const Clustering exact = KMeans1DExact(v, 4);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const double obj = KMeansLloyd(v, 4, 100, seed).objective;
    EXPECT_GE(obj, exact.objective * (1 - 1e-12));
    best = std::min(best, obj);
  }
  EXPECT_LE(best, exact.objective * 1.05);
}

TEST(KMeansLloydTest, DeterministicPerSeed) {
  std::vector<double> v;
  for (int i = 0; i < 500; ++i) v.push_back(std::fmod(i * 7919.0, 1000.0));
  EXPECT_EQ(KMeansLloyd(v, 4, 50, 9).labels, KMeansLloyd(v, 4, 50, 9).labels);
}

TEST(AssignTiersTest, HottestClusterGoesToStandard) {
  const TierAssignment a = AssignTiers(Fixed({8.2e6, 5.7e6, 3.4e6, 1.4e6}), DefaultCatalog());
  EXPECT_EQ(a.cluster_to_tier, (std::vector<TierId>{TierId::kStandard, TierId::kStandardIA,
                                                    TierId::kOneZoneIA, TierId::kGlacier}));
}

TEST(AssignTiersTest, AscendingCentroidsMapInReverse) {
  const TierAssignment a = AssignTiers(Fixed({1, 2, 3, 4}), DefaultCatalog());
  EXPECT_EQ(a.cluster_to_tier, (std::vector<TierId>{TierId::kGlacier, TierId::kOneZoneIA,
                                                    TierId::kStandardIA, TierId::kStandard}));
}

TEST(AssignTiersTest, EqualCentroidsFavourLowerLabel) {
  const TierAssignment a = AssignTiers(Fixed({5, 5, 1, 1}), DefaultCatalog());
  EXPECT_EQ(a.cluster_to_tier, (std::vector<TierId>{TierId::kStandard, TierId::kStandardIA,
                                                    TierId::kOneZoneIA, TierId::kGlacier}));
}

TEST(AssignTiersTest, RejectsWrongShape) {
  try {
    AssignTiers(Fixed({3, 2, 1}), DefaultCatalog());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kClusterCountMismatch);
  }
  Clustering c = Fixed({4, 3, 2, 1});
  c.sizes[2] = 0;
  try {
    AssignTiers(c, DefaultCatalog());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCluster);
  }
}

TEST(AssignTiersProperty, PreservesCentroidOrder) {
  std::mt19937_64 rng(41);
  const PricingCatalog cat = DefaultCatalog();
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> centroids(4);
    for (double& x : centroids) x = std::uniform_real_distribution<double>(0, 1e6)(rng);
    const TierAssignment a = AssignTiers(Fixed(centroids), cat);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (centroids[i] > centroids[j]) {
          ASSERT_LT(cat.by_id(a.cluster_to_tier[i]).rank, cat.by_id(a.cluster_to_tier[j]).rank);
        }
      }
    }
  }
}

}  // namespace
}  // namespace goptier
