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

#include "goptier/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "goptier/error.hpp"
#include <nlohmann/json.hpp>

namespace goptier {
namespace {

[[noreturn]] void InvalidSpec(const std::string& what) {
  throw Error(ErrorCode::kInvalidSpec, "invalid sweep spec: " + what);
}

constexpr std::array<std::string_view, kTierCount> kTierColumns = {
    "standard_usd", "standard_ia_usd", "one_zone_ia_usd", "glacier_usd"};
constexpr int kClusterColumns = 4;

int PolicyOrder(PolicyId p) {
  for (std::size_t i = 0; i < kAllPolicies.size(); ++i) {
    if (kAllPolicies[i] == p) return static_cast<int>(i);
  }
  return static_cast<int>(kAllPolicies.size());
}

std::vector<std::string_view> SplitCsvLine(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view field = line.substr(start, comma == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : comma - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
      field.remove_prefix(1);
    }
    while (!field.empty() &&
           (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
      field.remove_suffix(1);
    }
    out.push_back(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double ParseDouble(std::string_view text, std::size_t line_no, std::string_view column) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::kParse, "rows CSV line " + std::to_string(line_no) + ": bad " +
                                       std::string(column) + " '" + std::string(text) + "'");
  }
  return value;
}

std::int64_t ParseInt(std::string_view text, std::size_t line_no) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::kParse, "rows CSV line " + std::to_string(line_no) +
                                       ": bad seed '" + std::string(text) + "'");
  }
  return value;
}

std::string Percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", fraction * 100.0);
  return buf;
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace

std::string FormatNumber(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void SweepSpec::Validate() const {
  if (fav_percentages.empty()) InvalidSpec("fav_percentages is empty");
  for (std::size_t i = 0; i < fav_percentages.size(); ++i) {
    const double f = fav_percentages[i];
    if (!(f > 0.0 && f <= 1.0)) InvalidSpec("fav_percentages must lie in (0, 1]");
    if (i > 0 && !(f > fav_percentages[i - 1])) {
      InvalidSpec("fav_percentages must be strictly increasing");
    }
  }
  if (seeds.empty()) InvalidSpec("seeds is empty");
  if (policies.empty()) InvalidSpec("policies is empty");
  for (std::size_t i = 0; i < policies.size(); ++i) {
    for (std::size_t j = i + 1; j < policies.size(); ++j) {
      if (policies[i] == policies[j]) InvalidSpec("duplicate policy");
    }
  }
  if (!(gop_hotness_threshold >= 0.0 && gop_hotness_threshold <= 1.0)) {
    InvalidSpec("gop_hotness_threshold must be in [0, 1]");
  }
  if (clusterer.k < 1) InvalidSpec("clusterer k must be >= 1");
  if (!repository) synth.Validate();
}

SweepSpec ParseSweepSpec(std::string_view json_text, const std::filesystem::path& base_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    InvalidSpec(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) InvalidSpec("top level must be an object");
  SweepSpec spec;
  try {
    if (doc.contains("fav_percentages")) {
      spec.fav_percentages = doc["fav_percentages"].get<std::vector<double>>();
    }
    if (doc.contains("seeds")) spec.seeds = doc["seeds"].get<std::vector<std::int64_t>>();
    if (doc.contains("policies")) {
      spec.policies.clear();
      for (const auto& name : doc["policies"].get<std::vector<std::string>>()) {
        auto p = ParsePolicyName(name);
        if (!p) InvalidSpec("unknown policy '" + name + "'");
        spec.policies.push_back(*p);
      }
    }
    if (doc.contains("synth")) spec.synth = ParseSynthSpec(doc["synth"].dump(), spec.synth);
    if (doc.contains("repository")) {
      std::filesystem::path p = doc["repository"].get<std::string>();
      spec.repository = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    }
    if (doc.contains("output_dir")) {
      std::filesystem::path p = doc["output_dir"].get<std::string>();
      spec.output_dir = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    }
    if (doc.contains("gop_hotness_threshold")) {
      spec.gop_hotness_threshold = doc["gop_hotness_threshold"].get<double>();
    }
    if (doc.contains("clusterer")) {
      const auto method = doc["clusterer"].get<std::string>();
      if (method == "exact") {
        spec.clusterer.method = ClustererConfig::Method::kExact;
      } else if (method == "lloyd") {
        spec.clusterer.method = ClustererConfig::Method::kLloyd;
      } else {
        InvalidSpec("clusterer must be \"exact\" or \"lloyd\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    InvalidSpec(e.what());
  }
  spec.Validate();
  return spec;
}

SweepSpec LoadSweepSpec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open sweep spec " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseSweepSpec(buf.str(), path.parent_path());
}

SweepResult AssembleResult(std::vector<SweepRow> rows) {
  for (const SweepRow& r : rows) CheckBreakdown(r.cost, r.detailed);
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.fav_pct != b.fav_pct) return a.fav_pct < b.fav_pct;
    if (a.seed != b.seed) return a.seed < b.seed;
    return PolicyOrder(a.cost.policy) < PolicyOrder(b.cost.policy);
  });

  std::map<std::pair<double, int>, std::vector<double>> groups;
  for (const SweepRow& r : rows) {
    groups[{r.fav_pct, PolicyOrder(r.cost.policy)}].push_back(r.cost.total_usd);
  }
  SweepResult result;
  for (const auto& [key, totals] : groups) {
    SweepAggregate agg;
    agg.fav_pct = key.first;
    agg.policy = kAllPolicies[static_cast<std::size_t>(key.second)];
    agg.samples = totals.size();
    double sum = 0.0;
    for (double t : totals) sum += t;
    agg.mean_total_usd = sum / static_cast<double>(totals.size());
    if (totals.size() > 1) {
      double ss = 0.0;
      for (double t : totals) ss += (t - agg.mean_total_usd) * (t - agg.mean_total_usd);
      agg.stddev_total_usd = std::sqrt(ss / static_cast<double>(totals.size() - 1));
    }
    result.aggregates.push_back(agg);
  }
  result.rows = std::move(rows);
  return result;
}

SweepResult RunSweep(const SweepSpec& spec, const PricingCatalog& catalog, unsigned jobs,
                     const ProgressFn& progress) {
  spec.Validate();
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  auto say = [&](const std::string& msg) {
    if (progress) progress(msg);
  };

  std::optional<Repository> shared;
  if (spec.repository) shared = LoadRepository(*spec.repository);

  std::vector<SweepRow> rows;
  std::vector<SweepFailure> failures;
  std::vector<ClusterDumpRow> dump;
  for (std::size_t si = 0; si < spec.seeds.size(); ++si) {
    const std::int64_t seed = spec.seeds[si];
    std::optional<Repository> synthesized;
    const Repository* repo = shared ? &*shared : nullptr;
    if (!repo) {
      try {
        SynthSpec s = spec.synth;
        s.seed = seed;
        synthesized = Synthesize(s);
        repo = &*synthesized;
      } catch (const Error& e) {
        for (double f : spec.fav_percentages) failures.push_back({f, seed, e.what()});
        continue;
      }
    }
    say("seed " + std::to_string(seed) + ": " + std::to_string(repo->videos().size()) +
        " videos");

    ClustererConfig clusterer = spec.clusterer;
    clusterer.lloyd_seed = static_cast<std::uint64_t>(seed);

    struct Cell {
      double fav_pct;
      std::optional<SweepRow> row;
      std::string error;
    };
    std::vector<FavSelection> selections(spec.fav_percentages.size());
    std::vector<std::string> selection_errors(spec.fav_percentages.size());
    for (std::size_t fi = 0; fi < spec.fav_percentages.size(); ++fi) {
      try {
        selections[fi] =
            SelectFavs(*repo, spec.fav_percentages[fi], spec.gop_hotness_threshold);
      } catch (const Error& e) {
        selection_errors[fi] = e.what();
      }
    }
    const std::size_t policies = spec.policies.size();
    std::vector<Cell> cells(spec.fav_percentages.size() * policies);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (std::size_t c = next++; c < cells.size(); c = next++) {
        const std::size_t fi = c / policies;
        Cell& cell = cells[c];
        cell.fav_pct = spec.fav_percentages[fi];
        if (!selection_errors[fi].empty()) {
          cell.error = selection_errors[fi];
          continue;
        }
        try {
          SweepRow row;
          row.fav_pct = cell.fav_pct;
          row.seed = seed;
          row.cost = EvaluatePolicy(spec.policies[c % policies], *repo, selections[fi],
                                    catalog, clusterer);
          CheckBreakdown(row.cost);
          cell.row = std::move(row);
        } catch (const std::exception& e) {
          cell.error = e.what();
        }
      }
    };
    const unsigned threads = std::min<unsigned>(jobs, static_cast<unsigned>(cells.size()));
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (Cell& cell : cells) {
      if (cell.row) {
        rows.push_back(std::move(*cell.row));
      } else {
        failures.push_back({cell.fav_pct, seed,
                            std::string(PolicyName(
                                spec.policies[static_cast<std::size_t>(&cell - cells.data()) % policies])) +
                                ": " + cell.error});
      }
    }
    if (si == 0 && selection_errors.back().empty()) {
      try {
        dump = ClusterFavGops(*repo, selections.back(), catalog, clusterer);
      } catch (const Error& e) {
        failures.push_back({spec.fav_percentages.back(), seed,
                            std::string("cluster dump: ") + e.what()});
      }
    }
  }

  SweepResult result = AssembleResult(std::move(rows));
  result.failures = std::move(failures);
  result.cluster_dump = std::move(dump);
  return result;
}

double ComputeReduction(double cost_a, double cost_b) {
  if (cost_b == 0.0) {
    throw Error(ErrorCode::kDivisionByZero, "reduction baseline cost is zero");
  }
  if (!(cost_b > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "reduction baseline cost must be > 0");
  }
  return (cost_b - cost_a) / cost_b;
}

Report RenderReport(const SweepResult& result) {
  if (result.rows.empty() || result.aggregates.empty()) {
    throw Error(ErrorCode::kEmptyResult, "nothing to report");
  }
  std::vector<double> favs;
  std::vector<PolicyId> policies;
  for (const SweepAggregate& a : result.aggregates) {
    if (favs.empty() || favs.back() != a.fav_pct) favs.push_back(a.fav_pct);
    if (std::find(policies.begin(), policies.end(), a.policy) == policies.end()) {
      policies.push_back(a.policy);
    }
  }
  std::sort(policies.begin(), policies.end(),
            [](PolicyId a, PolicyId b) { return PolicyOrder(a) < PolicyOrder(b); });
  auto mean_of = [&](double fav, PolicyId p) -> std::optional<double> {
    for (const SweepAggregate& a : result.aggregates) {
      if (a.fav_pct == fav && a.policy == p) return a.mean_total_usd;
    }
    return std::nullopt;
  };

  Report report;
  std::ostringstream table;
  table << "fav_pct";
  for (PolicyId p : policies) table << ',' << PolicyName(p);
  table << '\n';
  for (double f : favs) {
    table << FormatNumber(f);
    for (PolicyId p : policies) {
      table << ',';
      if (auto m = mean_of(f, p)) table << FormatNumber(*m);
    }
    table << '\n';
  }
  report.table_csv = table.str();

  std::ostringstream curves;
  curves << "fav_pct,policy,mean_total_usd,stddev_total_usd,samples\n";
  for (const SweepAggregate& a : result.aggregates) {
    curves << FormatNumber(a.fav_pct) << ',' << PolicyName(a.policy) << ','
           << FormatNumber(a.mean_total_usd) << ',' << FormatNumber(a.stddev_total_usd)
           << ',' << a.samples << '\n';
  }
  report.curves_csv = curves.str();

  std::set<std::int64_t> seeds;
  for (const SweepRow& r : result.rows) seeds.insert(r.seed);
  const double top = favs.back();
  std::ostringstream summary;
  summary << "goptier sweep summary\n";
  summary << "grid: " << favs.size() << " FAV levels x " << seeds.size() << " seeds x "
          << policies.size() << " policies (" << result.rows.size() << " rows)\n";
  if (!result.failures.empty()) {
    summary << "failed cells: " << result.failures.size() << '\n';
    for (const SweepFailure& f : result.failures) {
      summary << "  fav_pct=" << FormatNumber(f.fav_pct) << " seed=" << f.seed << ": "
              << f.message << '\n';
    }
  }
  summary << "\nmean total USD at fav_pct=" << FormatNumber(top) << ":\n";
  for (PolicyId p : policies) {
    if (auto m = mean_of(top, p)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.4f", *m);
      summary << "  " << PolicyName(p) << ": " << buf << '\n';
    }
  }
  summary << "\nreductions of gop-clustering at fav_pct=" << FormatNumber(top) << ":\n";
  const auto proposed = mean_of(top, PolicyId::kGopClustering);
  bool any = false;
  for (PolicyId baseline : {PolicyId::kVideoClustering, PolicyId::kPartialPreTranscoding}) {
    const auto base = mean_of(top, baseline);
    if (!proposed || !base || !(*base > 0.0)) continue;
    const double fraction = ComputeReduction(*proposed, *base);
    report.reductions.push_back(Reduction{baseline, top, fraction});
    summary << "  vs " << PolicyName(baseline) << ": " << Percent(fraction) << '\n';
    any = true;
  }
  if (!any) summary << "  (none)\n";
  report.summary_text = summary.str();
  return report;
}

std::string RowsCsvHeader() {
  std::string h = "policy,fav_pct,seed,storage_usd,compute_usd,total_usd";
  for (std::string_view c : kTierColumns) {
    h += ',';
    h += c;
  }
  for (int c = 1; c <= kClusterColumns; ++c) h += ",c" + std::to_string(c) + "_usd";
  return h;
}

std::string RowCsv(const SweepRow& row) {
  const CostBreakdown& b = row.cost;
  std::string s = std::string(PolicyName(b.policy)) + ',' + FormatNumber(row.fav_pct) + ',' +
                  std::to_string(row.seed) + ',' + FormatNumber(b.storage_usd) + ',' +
                  FormatNumber(b.compute_usd) + ',' + FormatNumber(b.total_usd);
  for (double t : b.per_tier_usd) s += ',' + FormatNumber(t);
  for (int c = 0; c < kClusterColumns; ++c) {
    s += ',';
    if (static_cast<std::size_t>(c) < b.per_cluster.size()) {
      s += FormatNumber(b.per_cluster[c].storage_usd);
    }
  }
  return s;
}

std::string FormatRowsCsv(const SweepResult& result) {
  std::string out = RowsCsvHeader() + '\n';
  for (const SweepRow& r : result.rows) out += RowCsv(r) + '\n';
  return out;
}

SweepResult ParseRowsCsv(std::string_view csv_text) {
  std::vector<SweepRow> rows;
  std::map<std::string, std::size_t, std::less<>> column;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos <= csv_text.size()) {
    const std::size_t nl = csv_text.find('\n', pos);
    std::string_view line = csv_text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? csv_text.size() + 1 : nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    if (line.front() == '#') continue;
    const auto fields = SplitCsvLine(line);
    if (!have_header) {
      for (std::size_t i = 0; i < fields.size(); ++i) column[std::string(fields[i])] = i;
      for (const char* required : {"policy", "fav_pct", "total_usd"}) {
        if (!column.count(required)) {
          throw Error(ErrorCode::kParse,
                      std::string("rows CSV header lacks '") + required + "' column");
        }
      }
      have_header = true;
      continue;
    }
    auto field = [&](std::string_view name) -> std::optional<std::string_view> {
      auto it = column.find(name);
      if (it == column.end() || it->second >= fields.size()) return std::nullopt;
      if (fields[it->second].empty()) return std::nullopt;
      return fields[it->second];
    };
    SweepRow row;
    const auto policy = ParsePolicyName(field("policy").value_or(""));
    if (!policy) {
      throw Error(ErrorCode::kParse, "rows CSV line " + std::to_string(line_no) +
                                         ": unknown policy '" +
                                         std::string(field("policy").value_or("")) + "'");
    }
    row.cost.policy = *policy;
    const auto fav = field("fav_pct");
    const auto total = field("total_usd");
    if (!fav || !total) {
      throw Error(ErrorCode::kParse,
                  "rows CSV line " + std::to_string(line_no) + ": missing fav_pct/total_usd");
    }
    row.fav_pct = ParseDouble(*fav, line_no, "fav_pct");
    row.cost.total_usd = ParseDouble(*total, line_no, "total_usd");
    if (auto s = field("seed")) row.seed = ParseInt(*s, line_no);
    const auto storage = field("storage_usd");
    const auto compute = field("compute_usd");
    if (storage && compute) {
      row.cost.storage_usd = ParseDouble(*storage, line_no, "storage_usd");
      row.cost.compute_usd = ParseDouble(*compute, line_no, "compute_usd");
      bool tiers = true;
      for (std::size_t t = 0; t < kTierCount; ++t) {
        if (auto v = field(kTierColumns[t])) {
          row.cost.per_tier_usd[t] = ParseDouble(*v, line_no, kTierColumns[t]);
        } else {
          tiers = false;
        }
      }
      row.detailed = tiers;
      // Cluster columns carry costs only; the tier is inferred from the
      // column's rank position, membership is not recorded.
      for (int c = 0; c < kClusterColumns; ++c) {
        const std::string name = "c" + std::to_string(c + 1) + "_usd";
        if (auto v = field(name)) {
          ClusterCost cc;
          cc.label = c;
          cc.tier = static_cast<TierId>(c);
          cc.storage_usd = ParseDouble(*v, line_no, name);
          row.cost.per_cluster.push_back(cc);
        }
      }
    } else {
      // Totals-only rows: held as all-storage so total = storage + compute.
      row.cost.storage_usd = row.cost.total_usd;
      row.detailed = false;
    }
    rows.push_back(std::move(row));
  }
  if (!have_header) throw Error(ErrorCode::kParse, "rows CSV is empty");
  return AssembleResult(std::move(rows));
}

std::string FormatClusterCsv(const std::vector<ClusterDumpRow>& rows) {
  std::string out = "video_id,gop_index,size_mb,views,cluster_label,tier_id\n";
  for (const ClusterDumpRow& r : rows) {
    out += r.video_id + ',' + std::to_string(r.gop_index) + ',' + FormatNumber(r.size_mb) +
           ',' + std::to_string(r.views) + ',' + std::to_string(r.label) + ',' +
           std::string(TierName(r.tier)) + '\n';
  }
  return out;
}

void WriteReportFiles(const SweepResult& result, const Report& report,
                      const std::filesystem::path& output_dir, bool with_sweep_data) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create " + output_dir.string() + ": " + ec.message());
  }
  WriteFile(output_dir / "table.csv", report.table_csv);
  WriteFile(output_dir / "curves.csv", report.curves_csv);
  WriteFile(output_dir / "summary.txt", report.summary_text);
  if (!with_sweep_data) return;
  WriteFile(output_dir / "rows.csv", FormatRowsCsv(result));
  WriteFile(output_dir / "clusters.csv", FormatClusterCsv(result.cluster_dump));
}

}  // namespace goptier
