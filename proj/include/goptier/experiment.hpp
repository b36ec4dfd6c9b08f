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

#ifndef GOPTIER_EXPERIMENT_HPP_
#define GOPTIER_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "goptier/cost.hpp"
#include "goptier/pricing.hpp"
#include "goptier/synth.hpp"

namespace goptier {

struct SweepSpec {
  std::vector<double> fav_percentages{0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
  std::vector<std::int64_t> seeds{1, 2, 3, 4, 5};
  std::vector<PolicyId> policies{kAllPolicies.begin(), kAllPolicies.end()};
  SynthSpec synth;  // seed field is overridden per sweep seed
  // When set, this repository is used for every seed instead of synthesis.
  std::optional<std::filesystem::path> repository;
  std::filesystem::path output_dir = "goptier-out";
  double gop_hotness_threshold = kDefaultGopHotnessThreshold;
  ClustererConfig clusterer;

  void Validate() const;  // throws Error(kInvalidSpec)
};

// Sweep manifests are JSON objects with optional keys fav_percentages,
// seeds, policies (names), synth (SynthSpec object), repository (path),
// output_dir, gop_hotness_threshold, clusterer ("exact" | "lloyd").
// Relative paths resolve against `base_dir`.
SweepSpec ParseSweepSpec(std::string_view json_text,
                         const std::filesystem::path& base_dir = {});
SweepSpec LoadSweepSpec(const std::filesystem::path& path);

struct SweepRow {
  double fav_pct = 0.0;
  std::int64_t seed = 0;
  CostBreakdown cost;
  // False for rows ingested with totals only (no storage/compute/tier split).
  bool detailed = true;
};

struct SweepAggregate {
  double fav_pct = 0.0;
  PolicyId policy = PolicyId::kGopClustering;
  double mean_total_usd = 0.0;
  double stddev_total_usd = 0.0;  // sample standard deviation; 0 for one seed
  std::size_t samples = 0;
};

struct SweepFailure {
  double fav_pct = 0.0;
  std::int64_t seed = 0;
  std::string message;
};

struct SweepResult {
  std::vector<SweepRow> rows;            // canonical order
  std::vector<SweepAggregate> aggregates;  // by fav_pct, then policy
  std::vector<SweepFailure> failures;
  // GopClustering labels at the highest fav_pct for the first seed.
  std::vector<ClusterDumpRow> cluster_dump;
};

// Sorts rows canonically (fav_pct, seed, policy in table order), checks
// every row's cost invariants and computes the aggregates.
SweepResult AssembleResult(std::vector<SweepRow> rows);

using ProgressFn = std::function<void(std::string_view)>;

// Cells of one seed run on up to `jobs` threads (0 = hardware concurrency).
// Failed cells are listed in failures; completed cells are kept.
SweepResult RunSweep(const SweepSpec& spec, const PricingCatalog& catalog,
                     unsigned jobs = 0, const ProgressFn& progress = {});

// Fractional saving of cost_a relative to cost_b: (b - a) / b.
double ComputeReduction(double cost_a, double cost_b);

struct Reduction {
  PolicyId baseline = PolicyId::kVideoClustering;
  double fav_pct = 0.0;
  double fraction = 0.0;
};

struct Report {
  std::string table_csv;
  std::string curves_csv;
  std::string summary_text;
  std::vector<Reduction> reductions;
};

Report RenderReport(const SweepResult& result);

// Row CSV: policy,fav_pct,seed,storage_usd,compute_usd,total_usd, one
// <tier>_usd column per tier, then c1_usd..c4_usd (clusters by tier rank).
std::string RowsCsvHeader();
std::string RowCsv(const SweepRow& row);
std::string FormatRowsCsv(const SweepResult& result);
// Accepts the full row CSV or a reduced one with only policy, fav_pct and
// total_usd (seed defaults to 0), as used for injected reference tables.
SweepResult ParseRowsCsv(std::string_view csv_text);

std::string FormatClusterCsv(const std::vector<ClusterDumpRow>& rows);

// Writes table.csv, curves.csv and summary.txt, plus rows.csv and
// clusters.csv when `with_sweep_data` is set.
void WriteReportFiles(const SweepResult& result, const Report& report,
                      const std::filesystem::path& output_dir, bool with_sweep_data = true);

// Shortest decimal string that parses back to the same double.
std::string FormatNumber(double value);

}  // namespace goptier

#endif  // GOPTIER_EXPERIMENT_HPP_
