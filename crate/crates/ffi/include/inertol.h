#ifndef INERTOL_H
#define INERTOL_H

/* Generated by cbindgen from inertol-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum InertolStatus {
  INERTOL_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  INERTOL_STATUS_NULL_POINTER = 1,
  /**
   * An argument violates a precondition.
   */
  INERTOL_STATUS_INVALID_INPUT = 2,
  /**
   * No component influences the resultant.
   */
  INERTOL_STATUS_DEGENERATE_MODEL = 3,
  /**
   * The hypothesis is not defined for this model shape.
   */
  INERTOL_STATUS_UNSUPPORTED_HYPOTHESIS = 4,
  /**
   * A value lies outside the expression's domain.
   */
  INERTOL_STATUS_OUT_OF_DOMAIN = 5,
  /**
   * The request exceeds an exhaustive routine's size cap.
   */
  INERTOL_STATUS_UNSUPPORTED_SIZE = 6,
  /**
   * The capability index is undefined (degenerate batch).
   */
  INERTOL_STATUS_UNDEFINED_CAPABILITY = 7,
  /**
   * The output buffer is smaller than the component count.
   */
  INERTOL_STATUS_BUFFER_TOO_SMALL = 8,
  /**
   * The model has no resultant requirement of the needed kind.
   */
  INERTOL_STATUS_MISSING_RESULTANT = 9,
  /**
   * A string argument is not valid UTF-8.
   */
  INERTOL_STATUS_INVALID_UTF8 = 10,
} InertolStatus;

/**
 * Opaque assembly model handle. Build with `inertol_model_add_component`
 * and one of the `inertol_model_set_*` calls, then pass to the allocation
 * functions. Treat as owned by one thread at a time.
 */
typedef struct InertolModel InertolModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string; do not free.
 */
const char *inertol_version(void);

/**
 * Static name of a status code; do not free.
 */
const char *inertol_status_name(enum InertolStatus status);

/**
 * Allocate an empty model. Free with `inertol_model_free`.
 */
struct InertolModel *inertol_model_new(void);

/**
 * Free a model created by `inertol_model_new`. A null pointer is ignored.
 *
 * # Safety
 * `model` must be null or a pointer returned by `inertol_model_new` that
 * has not been freed yet.
 */
void inertol_model_free(struct InertolModel *model);

/**
 * Append a component with the given incidence coefficient and feasibility
 * weight (`beta > 0`; pass 1.0 for uniform chains). Component names must be
 * unique.
 *
 * # Safety
 * `model` must be a live model pointer; `name` must be a nul-terminated
 * string valid for the duration of the call.
 */
enum InertolStatus inertol_model_add_component(struct InertolModel *model,
                                               const char *name,
                                               double alpha,
                                               double beta);

/**
 * Set a symmetric interval requirement on the resultant (`full_width > 0`).
 *
 * # Safety
 * `model` must be a live model pointer.
 */
enum InertolStatus inertol_model_set_interval(struct InertolModel *model,
                                              double target,
                                              double full_width);

/**
 * Set a maximum-inertia requirement on the resultant (`max_inertia > 0`).
 *
 * # Safety
 * `model` must be a live model pointer.
 */
enum InertolStatus inertol_model_set_inertia(struct InertolModel *model,
                                             double target,
                                             double max_inertia);

/**
 * Number of components added so far; 0 for a null model.
 *
 * # Safety
 * `model` must be null or a live model pointer.
 */
size_t inertol_model_component_count(const struct InertolModel *model);

/**
 * Batch inertia `sqrt(sigma^2 + delta^2)`.
 *
 * # Safety
 * `out` must point to writable memory for one double.
 */
enum InertolStatus inertol_inertia(double sigma, double delta, double *out);

/**
 * Interval capability `(full_width/2 - |delta|) / (3 sigma)`. Returns
 * `UndefinedCapability` for a zero-dispersion batch.
 *
 * # Safety
 * `out` must point to writable memory for one double.
 */
enum InertolStatus inertol_cpk(double full_width, double delta, double sigma, double *out);

/**
 * Inertial capability `i_max / sqrt(sigma^2 + delta^2)`. Returns
 * `UndefinedCapability` for a zero-inertia batch.
 *
 * # Safety
 * `out` must point to writable memory for one double.
 */
enum InertolStatus inertol_cpi(double i_max, double sigma, double delta, double *out);

/**
 * Correction coefficient guaranteeing `cpk_target` on a chain of `n`
 * components: `sqrt(cpk_target^2 + n/9)`.
 *
 * # Safety
 * `out` must point to writable memory for one double.
 */
enum InertolStatus inertol_icc_for_cpk(double cpk_target, size_t n, double *out);

/**
 * Floor of the resultant capability index: `sqrt(icc^2 - n/9)` when it
 * exists. When the floor does not exist (`n > 9 icc^2`), `*unbounded` is
 * set to true and `*out` is left untouched.
 *
 * # Safety
 * `out` and `unbounded` must point to writable memory.
 */
enum InertolStatus inertol_cpk_min(double icc, size_t n, double *out, bool *unbounded);

/**
 * Common component offset minimizing the resultant index:
 * `r_y / (18 icc^2)`.
 *
 * # Safety
 * `out` must point to writable memory for one double.
 */
enum InertolStatus inertol_worst_offset(double r_y, double icc, double *out);

/**
 * Resultant index when all `n` components sit at their allocated inertia
 * with common offset `delta`; infinite at the domain edge.
 *
 * # Safety
 * `out` must point to writable memory for one double.
 */
enum InertolStatus inertol_cpk_at_offset(double r_y,
                                         double icc,
                                         size_t n,
                                         double delta,
                                         double *out);

/**
 * Derivative of the index profile on the non-negative branch.
 *
 * # Safety
 * `out` must point to writable memory for one double.
 */
enum InertolStatus inertol_cpk_derivative(double r_y,
                                          double icc,
                                          size_t n,
                                          double delta,
                                          double *out);

/**
 * Component capacity of a coefficient at a target index: real budget
 * `9 (icc^2 - cpk_target^2)` clamped at zero, and its floor.
 *
 * # Safety
 * `out_budget` and `out_capacity` must point to writable memory.
 */
enum InertolStatus inertol_max_components(double icc,
                                          double cpk_target,
                                          double *out_budget,
                                          uint64_t *out_capacity);

/**
 * Worst-case interval allocation of the model's interval width; writes one
 * full width per component in insertion order.
 *
 * # Safety
 * `model` must be a live model pointer; `out` must point to at least
 * `out_len` writable doubles.
 */
enum InertolStatus inertol_allocate_worst_case(const struct InertolModel *model,
                                               double *out,
                                               size_t out_len);

/**
 * Statistical (RSS) interval allocation; see `inertol_allocate_worst_case`.
 *
 * # Safety
 * As `inertol_allocate_worst_case`.
 */
enum InertolStatus inertol_allocate_statistical(const struct InertolModel *model,
                                                double *out,
                                                size_t out_len);

/**
 * Inflated statistical interval allocation with factor `f >= 1`.
 *
 * # Safety
 * As `inertol_allocate_worst_case`.
 */
enum InertolStatus inertol_allocate_inflated(const struct InertolModel *model,
                                             double f,
                                             double *out,
                                             size_t out_len);

/**
 * Worst-case inertia allocation. The budget is the model's inertia
 * requirement, or its interval width divided by 6.
 *
 * # Safety
 * As `inertol_allocate_worst_case`.
 */
enum InertolStatus inertol_allocate_inertia_worst_case(const struct InertolModel *model,
                                                       double *out,
                                                       size_t out_len);

/**
 * Random-means inertia allocation; see
 * `inertol_allocate_inertia_worst_case` for the budget rule.
 *
 * # Safety
 * As `inertol_allocate_worst_case`.
 */
enum InertolStatus inertol_allocate_inertia_random_means(const struct InertolModel *model,
                                                         double *out,
                                                         size_t out_len);

/**
 * Systematic-shift inertia allocation (`delta = k sigma` on every
 * component); uniform chains only.
 *
 * # Safety
 * As `inertol_allocate_worst_case`.
 */
enum InertolStatus inertol_allocate_inertia_systematic(const struct InertolModel *model,
                                                       double k,
                                                       double *out,
                                                       size_t out_len);

/**
 * Partial-shift inertia allocation (`m` of the components shifted);
 * uniform chains only.
 *
 * # Safety
 * As `inertol_allocate_worst_case`.
 */
enum InertolStatus inertol_allocate_inertia_partial(const struct InertolModel *model,
                                                    size_t m,
                                                    double k,
                                                    double *out,
                                                    size_t out_len);

/**
 * Corrected inertial allocation from the model's interval width at the
 * given coefficient; writes one inertia per component.
 *
 * # Safety
 * As `inertol_allocate_worst_case`.
 */
enum InertolStatus inertol_allocate_corrected(const struct InertolModel *model,
                                              double icc,
                                              double *out,
                                              size_t out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INERTOL_H */
