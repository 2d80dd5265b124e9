#ifndef ACO_FFI_H
#define ACO_FFI_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum AcoStatus {
  ACO_STATUS_OK = 0,
  ACO_STATUS_NULL_POINTER = 1,
  ACO_STATUS_INVALID_ARGUMENT = 2,
  ACO_STATUS_CONFIG = 3,
  ACO_STATUS_EVALUATION = 4,
  ACO_STATUS_IO = 5,
  ACO_STATUS_BUFFER_TOO_SMALL = 6,
  ACO_STATUS_PANIC = 7,
} AcoStatus;

typedef enum AcoFunction {
  ACO_FUNCTION_ACKLEY = 1,
  ACO_FUNCTION_SPHERE = 2,
  ACO_FUNCTION_SUM_SQUARE = 3,
  ACO_FUNCTION_DIXON_PRICE = 4,
  ACO_FUNCTION_ROSENBROCK = 5,
  ACO_FUNCTION_RASTRIGIN = 6,
  ACO_FUNCTION_GRIEWANK = 7,
  ACO_FUNCTION_ZAKHAROV = 8,
} AcoFunction;

typedef enum AcoFormula {
  ACO_FORMULA_PAPER = 0,
  ACO_FORMULA_STANDARD = 1,
} AcoFormula;

typedef enum AcoSelectionMethod {
  ACO_SELECTION_METHOD_RWS = 0,
  ACO_SELECTION_METHOD_SUS = 1,
  ACO_SELECTION_METHOD_BHS = 2,
} AcoSelectionMethod;

typedef enum AcoBasis {
  ACO_BASIS_WEIGHT = 0,
  ACO_BASIS_FIT_VAL = 1,
} AcoBasis;

typedef enum AcoMetricKind {
  /**
   * Uses `minkowski_order`.
   */
  ACO_METRIC_KIND_MINKOWSKI = 0,
  ACO_METRIC_KIND_SQUARED_EUCLIDEAN = 1,
  ACO_METRIC_KIND_CHEBYCHEV = 2,
  ACO_METRIC_KIND_BRAY_CURTIS = 3,
  ACO_METRIC_KIND_CANBERRA = 4,
} AcoMetricKind;

/**
 * Opaque benchmark objective.
 */
typedef struct AcoObjective AcoObjective;

/**
 * Opaque result of one optimizer run.
 */
typedef struct AcoTrial AcoTrial;

/**
 * ACO parameters. Fill with `aco_params_classical` or `aco_params_improved`
 * and adjust.
 */
typedef struct AcoRunParams {
  size_t k;
  size_t m;
  double xi;
  double q;
  enum AcoSelectionMethod selection;
  enum AcoBasis basis;
  enum AcoMetricKind metric;
  double minkowski_order;
  size_t max_iterations;
  uint64_t seed;
  /**
   * Leading iterations whose selections are recorded (0 = none).
   */
  size_t trace_iterations;
  bool clamp_samples;
} AcoRunParams;

typedef struct AcoPsoParams {
  size_t swarm_size;
  double c1;
  double c2;
  double inertia_high;
  double inertia_low;
  size_t max_iterations;
  uint64_t seed;
} AcoPsoParams;

typedef struct AcoDeParams {
  size_t population;
  double weight_factor;
  double crossover_factor;
  size_t max_iterations;
  uint64_t seed;
} AcoDeParams;

/**
 * One traced selection; `l`, `i` and `iteration` are 0-based, `selected_rank` 1-based.
 */
typedef struct AcoSelectionRecord {
  size_t iteration;
  size_t l;
  size_t i;
  size_t selected_rank;
} AcoSelectionRecord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *aco_last_error_message(void);

/**
 * Creates a built-in benchmark of dimension `dim`.
 *
 * # Safety
 * `out` must be valid for one pointer write.
 */
enum AcoStatus aco_objective_new(enum AcoFunction function,
                                 size_t dim,
                                 enum AcoFormula formula,
                                 struct AcoObjective **out);

/**
 * # Safety
 * `objective` must be null or a pointer from `aco_objective_new` not yet freed.
 */
void aco_objective_free(struct AcoObjective *objective);

/**
 * # Safety
 * `objective` must be a live handle; `x` valid for `len` reads; `out` for one write.
 */
enum AcoStatus aco_objective_evaluate(const struct AcoObjective *objective,
                                      const double *x,
                                      size_t len,
                                      double *out);

/**
 * # Safety
 * `objective` must be a live handle; `min` and `max` valid for one write each.
 */
enum AcoStatus aco_objective_bounds(const struct AcoObjective *objective, double *min, double *max);

/**
 * Dimension of a live objective handle, 0 for null.
 *
 * # Safety
 * `objective` must be null or a live handle.
 */
size_t aco_objective_dimension(const struct AcoObjective *objective);

/**
 * BHS(Weight), Manhattan, xi = 0.5, k = m = 10, 1000 iterations.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum AcoStatus aco_params_classical(struct AcoRunParams *out);

/**
 * RWS(FitVal), squared Euclidean, xi = 0.5, k = m = 10, 1000 iterations.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum AcoStatus aco_params_improved(struct AcoRunParams *out);

/**
 * # Safety
 * `out` must be valid for one write.
 */
enum AcoStatus aco_pso_params_default(struct AcoPsoParams *out);

/**
 * # Safety
 * `out` must be valid for one write.
 */
enum AcoStatus aco_de_params_default(struct AcoDeParams *out);

/**
 * Runs ACO on `objective` with `params.seed`.
 *
 * # Safety
 * `objective` must be a live handle, `params` valid for reads and `out` for one write.
 */
enum AcoStatus aco_run(const struct AcoObjective *objective,
                       const struct AcoRunParams *params,
                       struct AcoTrial **out);

/**
 * # Safety
 * Same contract as [`aco_run`].
 */
enum AcoStatus aco_pso_run(const struct AcoObjective *objective,
                           const struct AcoPsoParams *params,
                           struct AcoTrial **out);

/**
 * # Safety
 * Same contract as [`aco_run`].
 */
enum AcoStatus aco_de_run(const struct AcoObjective *objective,
                          const struct AcoDeParams *params,
                          struct AcoTrial **out);

/**
 * # Safety
 * `trial` must be null or a pointer from a run function not yet freed.
 */
void aco_trial_free(struct AcoTrial *trial);

/**
 * Best fitness found; NaN for null.
 *
 * # Safety
 * `trial` must be null or a live handle.
 */
double aco_trial_final_best(const struct AcoTrial *trial);

/**
 * Best fitness of the initial population; NaN for null.
 *
 * # Safety
 * `trial` must be null or a live handle.
 */
double aco_trial_initial_best(const struct AcoTrial *trial);

/**
 * Number of iterations, which is also the trajectory length.
 *
 * # Safety
 * `trial` must be null or a live handle.
 */
size_t aco_trial_iterations(const struct AcoTrial *trial);

/**
 * Length of the best solution vector.
 *
 * # Safety
 * `trial` must be null or a live handle.
 */
size_t aco_trial_dimension(const struct AcoTrial *trial);

/**
 * Number of recorded selections (0 when tracing was off).
 *
 * # Safety
 * `trial` must be null or a live handle.
 */
size_t aco_trial_trace_len(const struct AcoTrial *trial);

/**
 * Copies the best solution into `buf` (capacity `capacity`).
 *
 * # Safety
 * `trial` must be a live handle; `buf` valid for `capacity` writes.
 */
enum AcoStatus aco_trial_copy_solution(const struct AcoTrial *trial, double *buf, size_t capacity);

/**
 * Copies the best-so-far fitness per iteration into `buf`.
 *
 * # Safety
 * `trial` must be a live handle; `buf` valid for `capacity` writes.
 */
enum AcoStatus aco_trial_copy_trajectory(const struct AcoTrial *trial,
                                         double *buf,
                                         size_t capacity);

/**
 * Copies the selection trace into `buf`.
 *
 * # Safety
 * `trial` must be a live handle; `buf` valid for `capacity` writes.
 */
enum AcoStatus aco_trial_copy_trace(const struct AcoTrial *trial,
                                    struct AcoSelectionRecord *buf,
                                    size_t capacity);

/**
 * Normalized rank-weight selection probabilities for an archive of `k`.
 *
 * # Safety
 * `buf` must be valid for `k` writes.
 */
enum AcoStatus aco_rank_weights(size_t k, double q, double *buf);

/**
 * Raw (unnormalized) rank weights for an archive of `k`.
 *
 * # Safety
 * `buf` must be valid for `k` writes.
 */
enum AcoStatus aco_raw_rank_weights(size_t k, double q, double *buf);

/**
 * Root mean square of `len` errors.
 *
 * # Safety
 * `errors` must be valid for `len` reads and `out` for one write.
 */
enum AcoStatus aco_rmse(const double *errors, size_t len, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ACO_FFI_H */
