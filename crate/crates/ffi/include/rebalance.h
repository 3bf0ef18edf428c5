#ifndef REBALANCE_H
#define REBALANCE_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum RbStatus {
  RB_STATUS_OK = 0,
  RB_STATUS_NULL_POINTER = 1,
  RB_STATUS_INVALID_UTF8 = 2,
  RB_STATUS_UNKNOWN_METHOD = 3,
  RB_STATUS_BUFFER_TOO_SMALL = 4,
  RB_STATUS_CLASS_COUNT = 10,
  RB_STATUS_RATIO = 11,
  RB_STATUS_INDEX = 12,
  RB_STATUS_DIMENSION = 13,
  RB_STATUS_NEIGHBOR_COUNT = 14,
  RB_STATUS_CLUSTER = 15,
  RB_STATUS_DEGENERATE_INPUT = 16,
  RB_STATUS_WEIGHT = 17,
  RB_STATUS_INVALID_DATASET = 18,
  RB_STATUS_PARSE = 19,
  RB_STATUS_SHAPE = 20,
  RB_STATUS_DATASET_MISMATCH = 21,
  RB_STATUS_IO = 22,
  RB_STATUS_PANIC = 99,
} RbStatus;

/**
 * Opaque dataset handle.
 */
typedef struct RbDataset RbDataset;

/**
 * Opaque resampling result handle.
 */
typedef struct RbResult RbResult;

/**
 * Class summary of a dataset.
 */
typedef struct RbClassStats {
  size_t n_minority;
  size_t n_majority;
  double ratio;
} RbClassStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated)
 * and returns the buffer size the full message needs. Returns 0 when no
 * error has been recorded.
 *
 * # Safety
 * `buf` must be null or valid for `buf_len` bytes.
 */
size_t rb_last_error_message(char *buf, size_t buf_len);

/**
 * Builds a dataset from a row-major `n_samples x n_features` matrix and one
 * NUL-terminated label per row.
 *
 * # Safety
 * `features` must hold `n_samples * n_features` values, `labels` must hold
 * `n_samples` valid C strings and `out` must be writable.
 */
enum RbStatus rb_dataset_new(const double *features,
                             size_t n_samples,
                             size_t n_features,
                             const char *const *labels,
                             struct RbDataset **out);

/**
 * Reads a CSV file with header `f0,...,label`.
 *
 * # Safety
 * `path` must be a valid C string and `out` writable.
 */
enum RbStatus rb_dataset_read_csv(const char *path, struct RbDataset **out);

/**
 * # Safety
 * `ds` must be a live handle and `path` a valid C string.
 */
enum RbStatus rb_dataset_write_csv(const struct RbDataset *ds, const char *path);

/**
 * # Safety
 * `ds` must be null or a handle not yet freed.
 */
void rb_dataset_free(struct RbDataset *ds);

/**
 * # Safety
 * `ds` must be a live handle; the out pointers must be writable or null.
 */
enum RbStatus rb_dataset_dimensions(const struct RbDataset *ds,
                                    size_t *n_samples,
                                    size_t *n_features);

/**
 * # Safety
 * `ds` must be a live handle and `out` writable.
 */
enum RbStatus rb_dataset_stats(const struct RbDataset *ds, struct RbClassStats *out);

/**
 * Copies the row-major feature matrix into `buf`.
 *
 * # Safety
 * `ds` must be a live handle and `buf` valid for `buf_len` values.
 */
enum RbStatus rb_dataset_copy_features(const struct RbDataset *ds,
                                       double *buf,
                                       size_t buf_len,
                                       size_t *needed);

/**
 * Copies the label of `row` into `buf` as a NUL-terminated string.
 *
 * # Safety
 * `ds` must be a live handle and `buf` valid for `buf_len` bytes.
 */
enum RbStatus rb_dataset_copy_label(const struct RbDataset *ds,
                                    size_t row,
                                    char *buf,
                                    size_t buf_len,
                                    size_t *needed);

/**
 * Two-class Gaussian data: `round(w_min * n)` rows labelled `"0"` first,
 * then the rest labelled `"1"`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RbStatus rb_generate(size_t n_samples,
                          size_t n_features,
                          double w_min,
                          double w_maj,
                          double class_sep,
                          double sigma,
                          uint64_t seed,
                          struct RbDataset **out);

/**
 * Runs the sampler named as on the command line (`"smote"`,
 * `"tomek"`, ...) with default settings. `ratio` is `"auto"` or a number
 * in (0, 1]; null means `"auto"`.
 *
 * # Safety
 * `ds` must be a live handle, `method` a valid C string, `ratio` null or a
 * valid C string, and `out` writable.
 */
enum RbStatus rb_resample(const struct RbDataset *ds,
                          const char *method,
                          const char *ratio,
                          uint64_t seed,
                          struct RbResult **out);

/**
 * Borrowed view of the resampled dataset; valid until the result is freed.
 *
 * # Safety
 * `res` must be null or a live handle.
 */
const struct RbDataset *rb_result_dataset(const struct RbResult *res);

/**
 * Number of output rows copied from the input.
 *
 * # Safety
 * `res` must be null or a live handle.
 */
size_t rb_result_n_kept(const struct RbResult *res);

/**
 * Number of generated output rows (they follow the kept rows).
 *
 * # Safety
 * `res` must be null or a live handle.
 */
size_t rb_result_n_synthetic(const struct RbResult *res);

/**
 * Input row index of every kept output row.
 *
 * # Safety
 * `res` must be a live handle and `buf` valid for `buf_len` values.
 */
enum RbStatus rb_result_copy_kept_indices(const struct RbResult *res,
                                          size_t *buf,
                                          size_t buf_len,
                                          size_t *needed);

/**
 * # Safety
 * `res` must be null or a handle not yet freed.
 */
void rb_result_free(struct RbResult *res);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REBALANCE_H */
