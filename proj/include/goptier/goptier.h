/*
 * Copyright 2026 The goptier Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libgoptier.
 *
 * Objects are opaque handles returned by the create, load and default calls
 * and released with the matching *_free. Every fallible call returns a
 * gt_status; on failure gt_last_error() holds a message for the calling
 * thread until its next failing call. Strings returned through char** out
 * parameters are heap allocated and must be released with gt_string_free.
 */

#ifndef GOPTIER_GOPTIER_H_
#define GOPTIER_GOPTIER_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GOPTIER_BUILDING_LIBRARY)
#    define GT_API __declspec(dllexport)
#  else
#    define GT_API __declspec(dllimport)
#  endif
#else
#  define GT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gt_status {
  GT_OK = 0,
  GT_ERR_INVALID_ARGUMENT,
  GT_ERR_MALFORMED_CATALOG,
  GT_ERR_INVALID_SPEC,
  GT_ERR_EMPTY_REPOSITORY,
  GT_ERR_EMPTY_INPUT,
  GT_ERR_BAD_K,
  GT_ERR_CLUSTER_COUNT_MISMATCH,
  GT_ERR_EMPTY_CLUSTER,
  GT_ERR_NEGATIVE_SIZE,
  GT_ERR_INCONSISTENT_SELECTION,
  GT_ERR_DIVISION_BY_ZERO,
  GT_ERR_EMPTY_RESULT,
  GT_ERR_PARSE,
  GT_ERR_IO,
  GT_ERR_PARTIAL_FAILURE,
  GT_ERR_INTERNAL
} gt_status;

typedef enum gt_policy {
  GT_POLICY_FULL_PRE = 0,
  GT_POLICY_FULL_RE,
  GT_POLICY_PARTIAL_PRE,
  GT_POLICY_VIDEO_CLUSTERING,
  GT_POLICY_GOP_CLUSTERING
} gt_policy;

typedef enum gt_tier {
  GT_TIER_STANDARD = 0,
  GT_TIER_STANDARD_IA,
  GT_TIER_ONE_ZONE_IA,
  GT_TIER_GLACIER
} gt_tier;

#define GT_TIER_COUNT 4

typedef struct gt_catalog gt_catalog;
typedef struct gt_repo gt_repo;

typedef struct gt_tier_info {
  gt_tier id;
  double price_per_gb_month;
  int rank;
} gt_tier_info;

typedef struct gt_repo_totals {
  double total_size_mb;
  uint64_t total_views;
  uint64_t gop_count;
  uint64_t video_count;
} gt_repo_totals;

typedef struct gt_cluster_cost {
  int label;
  gt_tier tier;
  uint64_t members;
  double size_mb;
  double centroid_views;
  double storage_usd;
} gt_cluster_cost;

typedef struct gt_cost_breakdown {
  gt_policy policy;
  double storage_usd;
  double compute_usd;
  double total_usd;
  double per_tier_usd[GT_TIER_COUNT]; /* indexed by gt_tier */
  int cluster_count;                  /* 0 for non-clustering policies */
  gt_cluster_cost clusters[GT_TIER_COUNT]; /* ordered by tier rank */
} gt_cost_breakdown;

/* Placement query shared by cost and cluster calls. */
typedef struct gt_eval_options {
  double fav_fraction;          /* (0, 1] */
  double gop_hotness_threshold; /* [0, 1] */
  int use_lloyd;                /* 0 = exact 1-D solver */
  uint64_t lloyd_seed;
} gt_eval_options;

typedef struct gt_sweep_outcome {
  uint64_t rows;
  uint64_t failed_cells;
} gt_sweep_outcome;

typedef void (*gt_log_fn)(const char* message, void* user_data);

GT_API const char* gt_version(void);
GT_API const char* gt_last_error(void);
GT_API const char* gt_status_name(gt_status status);
GT_API void gt_string_free(char* s);

GT_API gt_eval_options gt_eval_options_default(void);

GT_API const char* gt_policy_name(gt_policy policy);
GT_API gt_status gt_policy_from_name(const char* name, gt_policy* out);
GT_API const char* gt_tier_name(gt_tier tier);

/* Pricing catalogs. */
GT_API gt_status gt_catalog_default(gt_catalog** out);
GT_API gt_status gt_catalog_load(const char* path, gt_catalog** out);
GT_API gt_status gt_catalog_parse(const char* json_text, gt_catalog** out);
GT_API gt_status gt_catalog_to_json(const gt_catalog* catalog, char** out_json);
/* rank in 1..4 */
GT_API gt_status gt_catalog_tier(const gt_catalog* catalog, int rank, gt_tier_info* out);
GT_API double gt_catalog_vm_hourly_rate(const gt_catalog* catalog);
GT_API void gt_catalog_free(gt_catalog* catalog);

/* Repositories. spec_json may be NULL for the small default preset; any
 * SynthSpec field present in it overrides the default. */
GT_API gt_status gt_repo_synthesize(const char* spec_json, gt_repo** out);
GT_API gt_status gt_repo_load(const char* path, gt_repo** out);
GT_API gt_status gt_repo_save(const gt_repo* repo, const char* path);
GT_API gt_status gt_repo_totals_get(const gt_repo* repo, gt_repo_totals* out);
GT_API void gt_repo_free(gt_repo* repo);

/* Cost of one policy at one FAV fraction. */
GT_API gt_status gt_evaluate(const gt_repo* repo, const gt_catalog* catalog,
                             gt_policy policy, const gt_eval_options* options,
                             gt_cost_breakdown* out);
/* Row CSV (header + one row) for a breakdown, as written by sweeps. */
GT_API gt_status gt_cost_csv(const gt_cost_breakdown* cost, double fav_fraction,
                             int64_t seed, int with_header, char** out_csv);

/* Writes the per-GOP cluster dump (video_id,gop_index,size_mb,views,
 * cluster_label,tier_id) of the GOP-clustering placement. */
GT_API gt_status gt_cluster_dump(const gt_repo* repo, const gt_catalog* catalog,
                                 const gt_eval_options* options, const char* csv_path,
                                 uint64_t* out_rows);

/* Runs a sweep manifest (JSON text; relative paths resolve against base_dir,
 * which may be NULL) and writes table.csv, curves.csv, summary.txt,
 * rows.csv and clusters.csv into output_dir (NULL = manifest's output_dir).
 * Returns GT_ERR_PARTIAL_FAILURE when some cells failed; the files still
 * hold every completed cell. jobs = 0 uses all hardware threads. */
GT_API gt_status gt_sweep_run(const char* spec_json, const char* base_dir,
                              const gt_catalog* catalog, unsigned jobs,
                              const char* output_dir, gt_log_fn log, void* log_user,
                              gt_sweep_outcome* out);

/* Renders a report from a rows CSV (full sweep rows or an injected table
 * with policy,fav_pct,total_usd columns) into output_dir. out_summary may
 * be NULL. */
GT_API gt_status gt_report_from_rows(const char* rows_csv_path, const char* output_dir,
                                     char** out_summary);

/* (cost_b - cost_a) / cost_b */
GT_API gt_status gt_compute_reduction(double cost_a, double cost_b, double* out);

#ifdef __cplusplus
}
#endif

#endif /* GOPTIER_GOPTIER_H_ */
