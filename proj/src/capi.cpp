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

#include "goptier/goptier.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "goptier/cost.hpp"
#include "goptier/error.hpp"
#include "goptier/experiment.hpp"
#include "goptier/pricing.hpp"
#include "goptier/repository.hpp"
#include "goptier/synth.hpp"

struct gt_catalog {
  goptier::PricingCatalog value;
};

struct gt_repo {
  goptier::Repository value;
};

static_assert(static_cast<int>(goptier::PolicyId::kFullPreTranscoding) == GT_POLICY_FULL_PRE);
static_assert(static_cast<int>(goptier::PolicyId::kGopClustering) == GT_POLICY_GOP_CLUSTERING);
static_assert(static_cast<int>(goptier::TierId::kStandard) == GT_TIER_STANDARD);
static_assert(static_cast<int>(goptier::TierId::kGlacier) == GT_TIER_GLACIER);
static_assert(goptier::kTierCount == GT_TIER_COUNT);
static_assert(static_cast<int>(goptier::ErrorCode::kPartialFailure) ==
              GT_ERR_PARTIAL_FAILURE);

namespace {

thread_local std::string g_last_error;

gt_status Fail(gt_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
gt_status Guard(Body&& body) noexcept {
  try {
    return body();
  } catch (const goptier::Error& e) {
    return Fail(static_cast<gt_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(GT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(GT_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(GT_ERR_INTERNAL, "unknown error");
  }
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

goptier::ClustererConfig ToClusterer(const gt_eval_options& o) {
  goptier::ClustererConfig c;
  c.method = o.use_lloyd ? goptier::ClustererConfig::Method::kLloyd
                         : goptier::ClustererConfig::Method::kExact;
  c.lloyd_seed = o.lloyd_seed;
  return c;
}

void FromBreakdown(const goptier::CostBreakdown& b, gt_cost_breakdown& out) {
  out = gt_cost_breakdown{};
  out.policy = static_cast<gt_policy>(b.policy);
  out.storage_usd = b.storage_usd;
  out.compute_usd = b.compute_usd;
  out.total_usd = b.total_usd;
  for (int t = 0; t < GT_TIER_COUNT; ++t) out.per_tier_usd[t] = b.per_tier_usd[t];
  out.cluster_count = static_cast<int>(std::min<std::size_t>(b.per_cluster.size(), GT_TIER_COUNT));
  for (int c = 0; c < out.cluster_count; ++c) {
    const auto& src = b.per_cluster[c];
    out.clusters[c] = gt_cluster_cost{src.label, static_cast<gt_tier>(src.tier), src.members,
                                      src.size_mb, src.centroid_views, src.storage_usd};
  }
}

goptier::CostBreakdown ToBreakdown(const gt_cost_breakdown& in) {
  goptier::CostBreakdown b;
  b.policy = static_cast<goptier::PolicyId>(in.policy);
  b.storage_usd = in.storage_usd;
  b.compute_usd = in.compute_usd;
  b.total_usd = in.total_usd;
  for (int t = 0; t < GT_TIER_COUNT; ++t) b.per_tier_usd[t] = in.per_tier_usd[t];
  for (int c = 0; c < in.cluster_count && c < GT_TIER_COUNT; ++c) {
    const auto& src = in.clusters[c];
    b.per_cluster.push_back(goptier::ClusterCost{src.label, static_cast<goptier::TierId>(src.tier),
                                                 src.members, src.size_mb, src.centroid_views,
                                                 src.storage_usd});
  }
  return b;
}

}  // namespace

extern "C" {

GT_API const char* gt_version(void) { return "0.1.0"; }

GT_API const char* gt_last_error(void) { return g_last_error.c_str(); }

GT_API const char* gt_status_name(gt_status status) {
  switch (status) {
    case GT_OK: return "OK";
    case GT_ERR_INTERNAL: return "InternalError";
    default:
      if (status > GT_OK && status <= GT_ERR_PARTIAL_FAILURE) {
        return goptier::ErrorCodeName(static_cast<goptier::ErrorCode>(status)).data();
      }
  }
  return "Unknown";
}

GT_API void gt_string_free(char* s) { std::free(s); }

GT_API gt_eval_options gt_eval_options_default(void) {
  return gt_eval_options{0.30, goptier::kDefaultGopHotnessThreshold, 0, 1};
}

GT_API const char* gt_policy_name(gt_policy policy) {
  if (policy < GT_POLICY_FULL_PRE || policy > GT_POLICY_GOP_CLUSTERING) return "unknown";
  return goptier::PolicyName(static_cast<goptier::PolicyId>(policy)).data();
}

GT_API gt_status gt_policy_from_name(const char* name, gt_policy* out) {
  if (name == nullptr || out == nullptr) return Fail(GT_ERR_INVALID_ARGUMENT, "null argument");
  auto p = goptier::ParsePolicyName(name);
  if (!p) {
    return Fail(GT_ERR_INVALID_ARGUMENT,
                std::string("unknown policy '") + name +
                    "' (expected full-pre, full-re, partial-pre, video-clustering, "
                    "gop-clustering)");
  }
  *out = static_cast<gt_policy>(*p);
  return GT_OK;
}

GT_API const char* gt_tier_name(gt_tier tier) {
  if (tier < GT_TIER_STANDARD || tier > GT_TIER_GLACIER) return "unknown";
  return goptier::TierName(static_cast<goptier::TierId>(tier)).data();
}

GT_API gt_status gt_catalog_default(gt_catalog** out) {
  return Guard([&] {
    if (out == nullptr) return Fail(GT_ERR_INVALID_ARGUMENT, "null out");
    *out = new gt_catalog{goptier::DefaultCatalog()};
    return GT_OK;
  });
}

GT_API gt_status gt_catalog_load(const char* path, gt_catalog** out) {
  return Guard([&] {
    if (path == nullptr || out == nullptr) return Fail(GT_ERR_INVALID_ARGUMENT, "null argument");
    *out = new gt_catalog{goptier::LoadCatalog(path)};
    return GT_OK;
  });
}

GT_API gt_status gt_catalog_parse(const char* json_text, gt_catalog** out) {
  return Guard([&] {
    if (json_text == nullptr || out == nullptr) {
      return Fail(GT_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = new gt_catalog{goptier::ParseCatalog(json_text)};
    return GT_OK;
  });
}

GT_API gt_status gt_catalog_to_json(const gt_catalog* catalog, char** out_json) {
  return Guard([&] {
    if (catalog == nullptr || out_json == nullptr) {
      return Fail(GT_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out_json = CopyString(goptier::SerializeCatalog(catalog->value));
    return GT_OK;
  });
}

GT_API gt_status gt_catalog_tier(const gt_catalog* catalog, int rank, gt_tier_info* out) {
  return Guard([&] {
    if (catalog == nullptr || out == nullptr) return Fail(GT_ERR_INVALID_ARGUMENT, "null argument");
    const auto& t = catalog->value.by_rank(rank);
    *out = gt_tier_info{static_cast<gt_tier>(t.id), t.price_per_gb_month, t.rank};
    return GT_OK;
  });
}

GT_API double gt_catalog_vm_hourly_rate(const gt_catalog* catalog) {
  return catalog == nullptr ? 0.0 : catalog->value.vm_hourly_rate();
}

GT_API void gt_catalog_free(gt_catalog* catalog) { delete catalog; }

GT_API gt_status gt_repo_synthesize(const char* spec_json, gt_repo** out) {
  return Guard([&] {
    if (out == nullptr) return Fail(GT_ERR_INVALID_ARGUMENT, "null out");
    goptier::SynthSpec spec;
    if (spec_json != nullptr) spec = goptier::ParseSynthSpec(spec_json);
    *out = new gt_repo{goptier::Synthesize(spec)};
    return GT_OK;
  });
}

GT_API gt_status gt_repo_load(const char* path, gt_repo** out) {
  return Guard([&] {
    if (path == nullptr || out == nullptr) return Fail(GT_ERR_INVALID_ARGUMENT, "null argument");
    *out = new gt_repo{goptier::LoadRepository(path)};
    return GT_OK;
  });
}

GT_API gt_status gt_repo_save(const gt_repo* repo, const char* path) {
  return Guard([&] {
    if (repo == nullptr || path == nullptr) return Fail(GT_ERR_INVALID_ARGUMENT, "null argument");
    goptier::SaveRepository(repo->value, path);
    return GT_OK;
  });
}

GT_API gt_status gt_repo_totals_get(const gt_repo* repo, gt_repo_totals* out) {
  return Guard([&] {
    if (repo == nullptr || out == nullptr) return Fail(GT_ERR_INVALID_ARGUMENT, "null argument");
    const auto t = goptier::ComputeTotals(repo->value);
    *out = gt_repo_totals{t.total_size_mb, t.total_views, t.gop_count,
                          static_cast<uint64_t>(repo->value.videos().size())};
    return GT_OK;
  });
}

GT_API void gt_repo_free(gt_repo* repo) { delete repo; }

GT_API gt_status gt_evaluate(const gt_repo* repo, const gt_catalog* catalog, gt_policy policy,
                             const gt_eval_options* options, gt_cost_breakdown* out) {
  return Guard([&] {
    if (repo == nullptr || catalog == nullptr || out == nullptr) {
      return Fail(GT_ERR_INVALID_ARGUMENT, "null argument");
    }
    if (policy < GT_POLICY_FULL_PRE || policy > GT_POLICY_GOP_CLUSTERING) {
      return Fail(GT_ERR_INVALID_ARGUMENT, "unknown policy");
    }
    const gt_eval_options opts = options ? *options : gt_eval_options_default();
    const auto favs =
        goptier::SelectFavs(repo->value, opts.fav_fraction, opts.gop_hotness_threshold);
    const auto b = goptier::EvaluatePolicy(static_cast<goptier::PolicyId>(policy), repo->value,
                                           favs, catalog->value, ToClusterer(opts));
    FromBreakdown(b, *out);
    return GT_OK;
  });
}

GT_API gt_status gt_cost_csv(const gt_cost_breakdown* cost, double fav_fraction, int64_t seed,
                             int with_header, char** out_csv) {
  return Guard([&] {
    if (cost == nullptr || out_csv == nullptr) return Fail(GT_ERR_INVALID_ARGUMENT, "null argument");
    goptier::SweepRow row;
    row.fav_pct = fav_fraction;
    row.seed = seed;
    row.cost = ToBreakdown(*cost);
    std::string text;
    if (with_header) text = goptier::RowsCsvHeader() + '\n';
    text += goptier::RowCsv(row) + '\n';
    *out_csv = CopyString(text);
    return GT_OK;
  });
}

GT_API gt_status gt_cluster_dump(const gt_repo* repo, const gt_catalog* catalog,
                                 const gt_eval_options* options, const char* csv_path,
                                 uint64_t* out_rows) {
  return Guard([&] {
    if (repo == nullptr || catalog == nullptr || csv_path == nullptr) {
      return Fail(GT_ERR_INVALID_ARGUMENT, "null argument");
    }
    const gt_eval_options opts = options ? *options : gt_eval_options_default();
    const auto favs =
        goptier::SelectFavs(repo->value, opts.fav_fraction, opts.gop_hotness_threshold);
    const auto rows = goptier::ClusterFavGops(repo->value, favs, catalog->value, ToClusterer(opts));
    std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
    if (!out) return Fail(GT_ERR_IO, std::string("cannot write ") + csv_path);
    out << goptier::FormatClusterCsv(rows);
    out.flush();
    if (!out) return Fail(GT_ERR_IO, std::string("write failed for ") + csv_path);
    if (out_rows != nullptr) *out_rows = rows.size();
    return GT_OK;
  });
}

GT_API gt_status gt_sweep_run(const char* spec_json, const char* base_dir,
                              const gt_catalog* catalog, unsigned jobs, const char* output_dir,
                              gt_log_fn log, void* log_user, gt_sweep_outcome* out) {
  return Guard([&] {
    if (spec_json == nullptr || catalog == nullptr) {
      return Fail(GT_ERR_INVALID_ARGUMENT, "null argument");
    }
    auto spec = goptier::ParseSweepSpec(spec_json, base_dir ? base_dir : "");
    if (output_dir != nullptr) spec.output_dir = output_dir;
    goptier::ProgressFn progress;
    if (log != nullptr) {
      progress = [&](std::string_view msg) { log(std::string(msg).c_str(), log_user); };
    }
    const auto result = goptier::RunSweep(spec, catalog->value, jobs, progress);
    if (out != nullptr) *out = gt_sweep_outcome{result.rows.size(), result.failures.size()};
    if (result.rows.empty()) {
      return Fail(GT_ERR_PARTIAL_FAILURE,
                  result.failures.empty() ? "sweep produced no rows"
                                          : "every sweep cell failed: " +
                                                result.failures.front().message);
    }
    const auto report = goptier::RenderReport(result);
    goptier::WriteReportFiles(result, report, spec.output_dir);
    if (!result.failures.empty()) {
      return Fail(GT_ERR_PARTIAL_FAILURE, std::to_string(result.failures.size()) +
                                              " sweep cells failed; first: " +
                                              result.failures.front().message);
    }
    return GT_OK;
  });
}

GT_API gt_status gt_report_from_rows(const char* rows_csv_path, const char* output_dir,
                                     char** out_summary) {
  return Guard([&] {
    if (rows_csv_path == nullptr || output_dir == nullptr) {
      return Fail(GT_ERR_INVALID_ARGUMENT, "null argument");
    }
    std::ifstream in(rows_csv_path, std::ios::binary);
    if (!in) return Fail(GT_ERR_IO, std::string("cannot open ") + rows_csv_path);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto result = goptier::ParseRowsCsv(text);
    const auto report = goptier::RenderReport(result);
    goptier::WriteReportFiles(result, report, output_dir, /*with_sweep_data=*/false);
    if (out_summary != nullptr) *out_summary = CopyString(report.summary_text);
    return GT_OK;
  });
}

GT_API gt_status gt_compute_reduction(double cost_a, double cost_b, double* out) {
  return Guard([&] {
    if (out == nullptr) return Fail(GT_ERR_INVALID_ARGUMENT, "null out");
    *out = goptier::ComputeReduction(cost_a, cost_b);
    return GT_OK;
  });
}

}  // extern "C"
