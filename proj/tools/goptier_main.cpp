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

// goptier command-line tool. Talks to the library only through goptier.h.
//
// Exit codes: 0 success, 1 runtime/IO failure, 2 invalid arguments.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "goptier/goptier.h"
#include <nlohmann/json.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr const char* kOutputDirEnv = "GOPTIER_OUTPUT_DIR";

struct CatalogDeleter {
  void operator()(gt_catalog* c) const { gt_catalog_free(c); }
};
struct RepoDeleter {
  void operator()(gt_repo* r) const { gt_repo_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { gt_string_free(s); }
};
using CatalogPtr = std::unique_ptr<gt_catalog, CatalogDeleter>;
using RepoPtr = std::unique_ptr<gt_repo, RepoDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct Globals {
  std::string catalog_path;
  int verbosity = 0;
};

int ExitFor(gt_status status) {
  switch (status) {
    case GT_OK: return kExitOk;
    case GT_ERR_INVALID_ARGUMENT:
    case GT_ERR_INVALID_SPEC: return kExitUsage;
    default: return kExitFailure;
  }
}

int Report(gt_status status, const std::string& context) {
  std::cerr << "goptier " << context << ": " << gt_status_name(status) << ": "
            << gt_last_error() << '\n';
  return ExitFor(status);
}

std::string DefaultOutputDir() {
  const char* env = std::getenv(kOutputDirEnv);
  return (env != nullptr && *env != '\0') ? env : "goptier-out";
}

gt_status OpenCatalog(const Globals& g, CatalogPtr& out) {
  gt_catalog* raw = nullptr;
  const gt_status s = g.catalog_path.empty() ? gt_catalog_default(&raw)
                                             : gt_catalog_load(g.catalog_path.c_str(), &raw);
  out.reset(raw);
  return s;
}

gt_status OpenRepo(const std::string& path, RepoPtr& out) {
  gt_repo* raw = nullptr;
  const gt_status s = gt_repo_load(path.c_str(), &raw);
  out.reset(raw);
  return s;
}

std::string Money(double usd) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", usd);
  return buf;
}

void PrintBreakdown(const gt_cost_breakdown& b, double fav) {
  std::cout << "policy=" << gt_policy_name(b.policy) << " fav_pct=" << fav
            << " storage_usd=" << Money(b.storage_usd) << " compute_usd=" << Money(b.compute_usd)
            << " total_usd=" << Money(b.total_usd) << '\n';
  for (int t = 0; t < GT_TIER_COUNT; ++t) {
    if (b.per_tier_usd[t] > 0.0) {
      std::cout << "  tier " << gt_tier_name(static_cast<gt_tier>(t)) << ": "
                << Money(b.per_tier_usd[t]) << '\n';
    }
  }
  for (int c = 0; c < b.cluster_count; ++c) {
    const gt_cluster_cost& cc = b.clusters[c];
    std::cout << "  C" << (c + 1) << "=" << Money(cc.storage_usd) << " (" << cc.members
              << " items, " << cc.size_mb << " MB, mean views " << cc.centroid_views << ", "
              << gt_tier_name(cc.tier) << ")\n";
  }
}

void PrintProvenance() {
  std::cout << "goptier " << gt_version() << '\n';
  gt_catalog* raw = nullptr;
  if (gt_catalog_default(&raw) != GT_OK) return;
  CatalogPtr catalog(raw);
  std::cout << "embedded pricing catalog (Amazon S3 storage rates, USD per GB-month):\n";
  for (int rank = 1; rank <= GT_TIER_COUNT; ++rank) {
    gt_tier_info info{};
    if (gt_catalog_tier(catalog.get(), rank, &info) == GT_OK) {
      std::cout << "  rank " << rank << "  " << gt_tier_name(info.id) << "  "
                << info.price_per_gb_month << '\n';
    }
  }
  std::cout << "  VM re-transcoding rate: " << gt_catalog_vm_hourly_rate(catalog.get())
            << " USD/hour (configurable default)\n";
}

void LogToStderr(const char* message, void* user) {
  const int verbosity = *static_cast<int*>(user);
  if (verbosity > 0) std::cerr << "[sweep] " << message << '\n';
}

std::optional<std::string> ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"goptier: tiered cloud-storage cost simulator for video GOPs"};
  app.require_subcommand(0, 1);
  Globals g;
  bool show_version = false;
  app.add_flag("--version", show_version, "Print version and embedded catalog, then exit");
  app.add_option("--catalog", g.catalog_path, "Pricing catalog JSON (default: embedded S3 rates)")
      ->check(CLI::ExistingFile);
  app.add_flag("-v,--verbose", g.verbosity, "Progress messages on stderr (repeatable)");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic repository");
  std::string synth_out, synth_config;
  std::optional<std::int64_t> videos, seed, max_views, gop_min, gop_max;
  std::optional<double> exponent, decay, spike;
  synth->add_option("-o,--output", synth_out, "Repository file to write (JSON Lines)")->required();
  synth->add_option("--config", synth_config, "SynthSpec JSON file; flags override it")
      ->check(CLI::ExistingFile);
  synth->add_option("--videos", videos, "Number of videos");
  synth->add_option("--seed", seed, "PRNG seed");
  synth->add_option("--exponent", exponent, "Zipf-like popularity exponent across videos");
  synth->add_option("--decay", decay, "Geometric view decay across GOP positions");
  synth->add_option("--spike-prob", spike, "Probability a GOP receives a popularity spike");
  synth->add_option("--max-views", max_views, "Views of the most popular video");
  synth->add_option("--gop-count-min", gop_min, "Fewest GOPs per video");
  synth->add_option("--gop-count-max", gop_max, "Most GOPs per video");
  bool large = false;
  synth->add_flag("--large", large, "Start from the 50,000-video preset");

  // cost
  auto* cost = app.add_subcommand("cost", "Cost of one placement policy");
  std::string cost_repo, cost_policy, cost_csv;
  gt_eval_options cost_opts = gt_eval_options_default();
  bool cost_lloyd = false;
  cost->add_option("repo", cost_repo, "Repository file")->required();
  cost->add_option("--policy", cost_policy,
                   "full-pre | full-re | partial-pre | video-clustering | gop-clustering")
      ->required();
  cost->add_option("--fav-pct", cost_opts.fav_fraction, "Fraction of videos that are FAV")
      ->capture_default_str();
  cost->add_option("--threshold", cost_opts.gop_hotness_threshold,
                   "GOP hotness threshold within FAV videos")
      ->capture_default_str();
  cost->add_flag("--lloyd", cost_lloyd, "Cluster with Lloyd's algorithm instead of the exact solver");
  cost->add_option("--csv", cost_csv, "Append the breakdown as a CSV row to this file");

  // cluster
  auto* cluster = app.add_subcommand("cluster", "Dump the GOP clustering for plotting");
  std::string cluster_repo, cluster_out;
  gt_eval_options cluster_opts = gt_eval_options_default();
  cluster->add_option("repo", cluster_repo, "Repository file")->required();
  cluster->add_option("--fav-pct", cluster_opts.fav_fraction, "Fraction of videos that are FAV")
      ->capture_default_str();
  cluster->add_option("--threshold", cluster_opts.gop_hotness_threshold,
                      "GOP hotness threshold within FAV videos")
      ->capture_default_str();
  cluster->add_option("-o,--output", cluster_out,
                      "CSV to write (default: $GOPTIER_OUTPUT_DIR/clusters.csv)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a FAV-percentage sweep over all policies");
  std::string sweep_spec, sweep_out;
  std::vector<std::int64_t> sweep_seeds;
  unsigned jobs = 0;
  sweep->add_option("spec", sweep_spec, "Sweep manifest (JSON)")->required()->check(CLI::ExistingFile);
  sweep->add_option("-o,--output", sweep_out, "Output directory (default: manifest output_dir)");
  sweep->add_option("--seeds", sweep_seeds, "Override the manifest's seeds")->delimiter(',');
  sweep->add_option("-j,--jobs", jobs, "Worker threads (0 = all hardware threads)")
      ->capture_default_str();

  // report
  auto* report = app.add_subcommand("report", "Render tables and reductions from a rows CSV");
  std::string report_rows, report_out;
  report->add_option("rows", report_rows, "Rows CSV (sweep rows.csv or an injected table)")
      ->required();
  report->add_option("-o,--output", report_out, "Output directory (default: $GOPTIER_OUTPUT_DIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* failing = &app;
    for (CLI::App* sub : {synth, cost, cluster, sweep, report}) {
      if (sub->parsed()) failing = sub;
    }
    std::cerr << failing->help();
    return kExitUsage;
  }

  if (show_version) {
    PrintProvenance();
    return kExitOk;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return kExitUsage;
  }

  CatalogPtr catalog;
  if (gt_status s = OpenCatalog(g, catalog); s != GT_OK) return Report(s, "catalog");

  if (synth->parsed()) {
    nlohmann::json spec = nlohmann::json::object();
    if (large) spec["video_count"] = 50000;
    if (!synth_config.empty()) {
      const auto text = ReadText(synth_config);
      if (!text) {
        std::cerr << "goptier synth: cannot read " << synth_config << '\n';
        return kExitFailure;
      }
      try {
        spec.update(nlohmann::json::parse(*text));
      } catch (const nlohmann::json::exception& e) {
        std::cerr << "goptier synth: " << synth_config << ": " << e.what() << '\n';
        return kExitUsage;
      }
    }
    if (videos) spec["video_count"] = *videos;
    if (seed) spec["seed"] = *seed;
    if (exponent) spec["video_popularity_exponent"] = *exponent;
    if (decay) spec["intra_video_decay"] = *decay;
    if (spike) spec["random_spike_prob"] = *spike;
    if (max_views) spec["max_video_views"] = *max_views;
    if (gop_min || gop_max) {
      std::int64_t lo = gop_min.value_or(20), hi = gop_max.value_or(120);
      if (spec.contains("gop_count_range") && spec["gop_count_range"].is_array() &&
          spec["gop_count_range"].size() == 2) {
        lo = gop_min.value_or(spec["gop_count_range"][0].get<std::int64_t>());
        hi = gop_max.value_or(spec["gop_count_range"][1].get<std::int64_t>());
      }
      spec["gop_count_range"] = {lo, hi};
    }
    gt_repo* raw = nullptr;
    if (gt_status s = gt_repo_synthesize(spec.dump().c_str(), &raw); s != GT_OK) {
      return Report(s, "synth");
    }
    RepoPtr repo(raw);
    if (gt_status s = gt_repo_save(repo.get(), synth_out.c_str()); s != GT_OK) {
      return Report(s, "synth");
    }
    gt_repo_totals t{};
    gt_repo_totals_get(repo.get(), &t);
    std::cout << "wrote " << synth_out << ": videos=" << t.video_count << " gops=" << t.gop_count
              << " total_size_mb=" << t.total_size_mb << " total_views=" << t.total_views << '\n';
    return kExitOk;
  }

  if (cost->parsed()) {
    gt_policy policy{};
    if (gt_status s = gt_policy_from_name(cost_policy.c_str(), &policy); s != GT_OK) {
      return Report(s, "cost");
    }
    RepoPtr repo;
    if (gt_status s = OpenRepo(cost_repo, repo); s != GT_OK) return Report(s, "cost");
    cost_opts.use_lloyd = cost_lloyd ? 1 : 0;
    gt_cost_breakdown b{};
    if (gt_status s = gt_evaluate(repo.get(), catalog.get(), policy, &cost_opts, &b); s != GT_OK) {
      return Report(s, "cost");
    }
    PrintBreakdown(b, cost_opts.fav_fraction);
    if (!cost_csv.empty()) {
      const bool fresh = !std::filesystem::exists(cost_csv) ||
                         std::filesystem::file_size(cost_csv) == 0;
      char* raw = nullptr;
      if (gt_status s = gt_cost_csv(&b, cost_opts.fav_fraction, 0, fresh ? 1 : 0, &raw);
          s != GT_OK) {
        return Report(s, "cost");
      }
      StringPtr text(raw);
      std::ofstream out(cost_csv, std::ios::binary | std::ios::app);
      out << text.get();
      if (!out) {
        std::cerr << "goptier cost: cannot append to " << cost_csv << '\n';
        return kExitFailure;
      }
    }
    return kExitOk;
  }

  if (cluster->parsed()) {
    RepoPtr repo;
    if (gt_status s = OpenRepo(cluster_repo, repo); s != GT_OK) return Report(s, "cluster");
    std::filesystem::path out = cluster_out;
    if (out.empty()) {
      out = std::filesystem::path(DefaultOutputDir()) / "clusters.csv";
      std::error_code ec;
      std::filesystem::create_directories(out.parent_path(), ec);
    }
    std::uint64_t rows = 0;
    if (gt_status s = gt_cluster_dump(repo.get(), catalog.get(), &cluster_opts,
                                      out.string().c_str(), &rows);
        s != GT_OK) {
      return Report(s, "cluster");
    }
    std::cout << "wrote " << out.string() << ": " << rows << " FAV GOPs\n";
    return kExitOk;
  }

  if (sweep->parsed()) {
    const auto text = ReadText(sweep_spec);
    if (!text) {
      std::cerr << "goptier sweep: cannot read " << sweep_spec << '\n';
      return kExitFailure;
    }
    std::string manifest = *text;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(manifest);
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "goptier sweep: " << sweep_spec << ": " << e.what() << '\n';
      return kExitUsage;
    }
    if (!sweep_seeds.empty()) {
      doc["seeds"] = sweep_seeds;
      manifest = doc.dump();
    }
    std::string out_dir = sweep_out;
    if (out_dir.empty() && !doc.contains("output_dir")) out_dir = DefaultOutputDir();
    const std::string base = std::filesystem::path(sweep_spec).parent_path().string();
    gt_sweep_outcome outcome{};
    const gt_status s =
        gt_sweep_run(manifest.c_str(), base.c_str(), catalog.get(), jobs,
                     out_dir.empty() ? nullptr : out_dir.c_str(), LogToStderr, &g.verbosity,
                     &outcome);
    std::cout << "sweep: " << outcome.rows << " rows, " << outcome.failed_cells
              << " failed cells\n";
    if (s != GT_OK) return Report(s, "sweep");
    return kExitOk;
  }

  if (report->parsed()) {
    const std::string out_dir = report_out.empty() ? DefaultOutputDir() : report_out;
    char* raw = nullptr;
    if (gt_status s = gt_report_from_rows(report_rows.c_str(), out_dir.c_str(), &raw);
        s != GT_OK) {
      return Report(s, "report");
    }
    StringPtr summary(raw);
    std::cout << summary.get();
    return kExitOk;
  }
  return kExitUsage;
}
