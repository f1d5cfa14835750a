#ifndef FERTGAME_H
#define FERTGAME_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define FG_REGIME_LOW 0

#define FG_REGIME_HIGH 1

#define FG_MODEL_BENCHMARK 0

#define FG_MODEL_GAME 1

#define FG_MODEL_EXTENDED 2

#define FG_DECILES 10

// Result code of every call. The nonzero codes for model errors match the
// CLI exit codes.
typedef enum FgStatus {
  FG_STATUS_OK = 0,
  FG_STATUS_NULL_POINTER = 1,
  FG_STATUS_INVALID_INPUT = 2,
  FG_STATUS_SOLVER_FAILURE = 3,
  FG_STATUS_PANIC = 4,
} FgStatus;

// Solved extended game, including its root lists.
typedef struct FgExtended FgExtended;

// Validated model parameters.
typedef struct FgParams FgParams;

typedef struct FgBenchmarkResult {
  double n_star;
  double c_w;
  double c_m;
  double u_family;
  double u_w;
  double u_m;
  double wife_utility_delta;
} FgBenchmarkResult;

typedef struct FgGameResult {
  double rho_star;
  double n_star;
  double c_w;
  double c_m;
  double u_w;
  double u_m;
  bool wife_participates;
  bool husband_participates;
  bool interior;
} FgGameResult;

typedef struct FgPartials {
  double alpha;
  double delta;
  double gamma;
  double a_w;
  double a_m;
} FgPartials;

typedef struct FgExtendedResult {
  // False at the no-birth fallback; `rho` is then NaN.
  bool has_rho;
  double rho;
  double n_star;
  double c_w;
  double c_m;
  double u_w;
  double u_m;
  bool wife_participates;
  bool husband_participates;
  bool interior;
  uint32_t regime;
  uintptr_t real_root_count;
  uintptr_t positive_root_count;
  uintptr_t admissible_root_count;
  bool no_interior_optimum;
} FgExtendedResult;

// Uniform range; `lo == hi` fixes the value.
typedef struct FgRange {
  double lo;
  double hi;
} FgRange;

typedef struct FgPopulationSpec {
  uintptr_t count;
  uint64_t seed;
  double aw_mu;
  double aw_sigma;
  double am_mu;
  double am_sigma;
  struct FgRange alpha;
  struct FgRange delta;
  struct FgRange gamma;
  struct FgRange beta;
  uint32_t model;
  uint32_t regime;
  double subsidy;
} FgPopulationSpec;

typedef struct FgAggregate {
  uintptr_t households;
  double mean_fertility;
  double childless_share;
  bool has_mean_transfer;
  double mean_transfer;
  double mean_income_ratio;
  uintptr_t decile_counts[FG_DECILES];
  // NaN for an empty decile.
  double decile_mean_fertility[FG_DECILES];
  double subsidy;
} FgAggregate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or an empty string.
// The pointer stays valid until the next call on this thread.
const char *fg_last_error(void);

// Library version as a static NUL-terminated string.
const char *fg_version(void);

// Validates parameters and allocates a handle. The rearing cost is borne
// by the husband; see [`fg_params_set_cost_split`].
//
// # Safety
// `out` must be null or valid for a pointer write.
enum FgStatus fg_params_new(double alpha,
                            double delta,
                            double gamma,
                            double beta,
                            double a_w,
                            double a_m,
                            struct FgParams **out);

// Sets how `beta` is split between wife and husband; the parts must add up
// to `beta`.
//
// # Safety
// `params` must be null or a live handle from [`fg_params_new`].
enum FgStatus fg_params_set_cost_split(struct FgParams *params, double beta_w, double beta_m);

// Reads one parameter by name index: 0 alpha, 1 delta, 2 gamma, 3 beta,
// 4 a_w, 5 a_m.
//
// # Safety
// `params` must be null or a live handle; `out` null or writable.
enum FgStatus fg_params_get(const struct FgParams *params, uint32_t index, double *out);

// # Safety
// `params` must be null or a handle from [`fg_params_new`] not yet freed.
void fg_params_free(struct FgParams *params);

// # Safety
// `params` must be null or a live handle; `out` null or writable.
enum FgStatus fg_solve_benchmark(const struct FgParams *params, struct FgBenchmarkResult *out);

// Closed-form game equilibrium.
//
// # Safety
// `params` must be null or a live handle; `out` null or writable.
enum FgStatus fg_solve_game(const struct FgParams *params, struct FgGameResult *out);

// Game with a per-child subsidy to the wife, solved by direct search.
//
// # Safety
// `params` must be null or a live handle; `out` null or writable.
enum FgStatus fg_oracle_game(const struct FgParams *params,
                             double subsidy,
                             struct FgGameResult *out);

// # Safety
// `params` must be null or a live handle; `out` null or writable.
enum FgStatus fg_equilibrium_transfer(const struct FgParams *params, double *out);

// Wife's fertility response to transfer `rho`.
//
// # Safety
// `params` must be null or a live handle; `out` null or writable.
enum FgStatus fg_wife_reaction(const struct FgParams *params, double rho, double *out);

// Critical wife income above which no children are born.
//
// # Safety
// `params` must be null or a live handle; `out` null or writable.
enum FgStatus fg_fertility_threshold(const struct FgParams *params, double *out);

// Analytic partials of the equilibrium transfer and fertility. `n_out`
// may be null; fertility partials fail with `SolverFailure` when
// fertility sits at zero, after `rho_out` has been written.
//
// # Safety
// `params` must be null or a live handle; outputs null or writable.
enum FgStatus fg_statics(const struct FgParams *params,
                         struct FgPartials *rho_out,
                         struct FgPartials *n_out);

// Solves the extended game and allocates a handle holding the result.
//
// # Safety
// `params` must be null or a live handle; `out` null or writable.
enum FgStatus fg_extended_solve(const struct FgParams *params,
                                uint32_t regime_code,
                                struct FgExtended **out);

// # Safety
// `handle` must be null or a live handle; `out` null or writable.
enum FgStatus fg_extended_summary(const struct FgExtended *handle, struct FgExtendedResult *out);

// Copies up to `len` positive roots of the first-order cubic into `buf`
// and stores the total number in `count`.
//
// # Safety
// `handle` must be null or live; `buf` valid for `len` writes unless
// `len == 0`; `count` null or writable.
enum FgStatus fg_extended_positive_roots(const struct FgExtended *handle,
                                         double *buf,
                                         uintptr_t len,
                                         uintptr_t *count);

// # Safety
// `handle` must be null or a handle from [`fg_extended_solve`] not yet freed.
void fg_extended_free(struct FgExtended *handle);

// Samples and solves a population.
//
// # Safety
// `spec` must be null or readable; `out` null or writable.
enum FgStatus fg_population_aggregate(const struct FgPopulationSpec *spec, struct FgAggregate *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FERTGAME_H */
