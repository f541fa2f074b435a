#ifndef SWEEP_FFI_H
#define SWEEP_FFI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  SWEEP_STATUS_OK = 0,
  SWEEP_STATUS_NULL_POINTER = 1,
  SWEEP_STATUS_INVALID_ARGUMENT = 2,
  SWEEP_STATUS_INVALID_CONFIG = 3,
  SWEEP_STATUS_PLACEMENT_INFEASIBLE = 4,
  SWEEP_STATUS_SWEEP_GEOMETRY = 5,
  /**
   * The run has not reached full coverage, so the requested metric is undefined.
   */
  SWEEP_STATUS_INCOMPLETE = 6,
  SWEEP_STATUS_IO = 7,
  SWEEP_STATUS_PANIC = 8,
} SweepStatus;

/**
 * Result of one [`sweep_sim_step`].
 */
typedef enum {
  SWEEP_STEP_STATE_RUNNING = 0,
  SWEEP_STEP_STATE_COMPLETE = 1,
  SWEEP_STEP_STATE_BUDGET_EXHAUSTED = 2,
} SweepStepState;

typedef enum {
  SWEEP_STRATEGY_RB = 0,
  SWEEP_STRATEGY_LDR_RANDOM = 1,
  SWEEP_STRATEGY_LDR_REPULSIVE = 2,
  SWEEP_STRATEGY_PM = 3,
  SWEEP_STRATEGY_SONS_BS = 4,
  SWEEP_STRATEGY_SONS_RW = 5,
} SweepStrategy;

/**
 * Opaque simulation handle.
 */
typedef struct SweepSim SweepSim;

/**
 * Plain-data run configuration. Start from [`sweep_config_default`].
 */
typedef struct {
  /**
   * One of `SweepStrategy`.
   */
  uint32_t strategy;
  uint32_t n_uavs;
  /**
   * Supervisory nodes in SoNS formations, brain included.
   */
  uint32_t supervisors;
  double arena_side;
  double cell_size;
  double region_size;
  double dt;
  uint64_t max_steps;
  uint64_t seed;
} SweepConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Defaults of the reference setup: RB, 25 UAVs, 40 m arena, 0.1 s steps.
 */
SweepConfig sweep_config_default(void);

/**
 * Message for the last failed call on this thread, or null. The pointer stays valid until
 * the next failing call on the same thread.
 */
const char *sweep_last_error(void);

/**
 * Build a simulation seeded with `cfg.seed`. On success `*out` owns a new handle.
 *
 * # Safety
 * `cfg` must point to a valid `SweepConfig`; `out` must be writable.
 */
SweepStatus sweep_sim_new(const SweepConfig *cfg, SweepSim **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `sim` must come from [`sweep_sim_new`] and not have been freed.
 */
void sweep_sim_free(SweepSim *sim);

/**
 * Advance one step.
 *
 * # Safety
 * `sim` must be a live handle; `state` may be null.
 */
SweepStatus sweep_sim_step(SweepSim *sim, SweepStepState *state);

/**
 * Step until full coverage or the step budget. `*cct` is the completion step, or 0 when
 * the budget ran out.
 *
 * # Safety
 * `sim` must be a live handle; `cct` may be null.
 */
SweepStatus sweep_sim_run(SweepSim *sim, uint64_t *cct);

/**
 * Steps taken so far; 0 for a null handle.
 *
 * # Safety
 * `sim` must be a live handle or null.
 */
uint64_t sweep_sim_steps(const SweepSim *sim);

/**
 * Fraction of cells visited so far.
 *
 * # Safety
 * `sim` must be a live handle; `out` must be writable.
 */
SweepStatus sweep_sim_coverage(const SweepSim *sim, double *out);

/**
 * Grid dimensions in cells.
 *
 * # Safety
 * `sim` must be a live handle; `cols` and `rows` must be writable.
 */
SweepStatus sweep_sim_grid_dims(const SweepSim *sim, size_t *cols, size_t *rows);

/**
 * Copy the row-major visit counts (south row first) into `buf`, which must hold exactly
 * `cols * rows` values.
 *
 * # Safety
 * `sim` must be a live handle; `buf` must be valid for `len` writes.
 */
SweepStatus sweep_sim_visits(const SweepSim *sim, uint32_t *buf, size_t len);

/**
 * Total and local coverage uniformity of a completed run.
 *
 * # Safety
 * `sim` must be a live handle; `tcu_out` and `lcu_out` must be writable.
 */
SweepStatus sweep_sim_uniformity(const SweepSim *sim, double *tcu_out, double *lcu_out);

/**
 * Uniformity of an arbitrary count vector.
 *
 * # Safety
 * `visits` must be valid for `len` reads; `out` must be writable.
 */
SweepStatus sweep_uniformity(const uint32_t *visits, size_t len, double *out);

/**
 * Run `runs` seeds (`cfg.seed + i`) and write the result files into `out_dir`.
 * `*incomplete` receives the number of runs that exhausted the step budget.
 *
 * # Safety
 * `cfg` must be valid, `out_dir` a NUL-terminated UTF-8 path, `incomplete` writable or null.
 */
SweepStatus sweep_run_experiment(const SweepConfig *cfg,
                                 uint32_t runs,
                                 const char *out_dir,
                                 uint32_t *incomplete);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SWEEP_FFI_H */
