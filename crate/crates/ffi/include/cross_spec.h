#ifndef CROSS_SPEC_H
#define CROSS_SPEC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Yamabe stability class.
typedef enum CrossSpecClass {
  CROSS_SPEC_CLASS_STABLE_NONDEGENERATE = 0,
  CROSS_SPEC_CLASS_DEGENERATE = 1,
  CROSS_SPEC_CLASS_UNSTABLE = 2,
} CrossSpecClass;

// Status codes returned by every fallible function.
typedef enum CrossSpecStatus {
  CROSS_SPEC_STATUS_OK = 0,
  CROSS_SPEC_STATUS_NULL_POINTER = 1,
  CROSS_SPEC_STATUS_PARSE = 2,
  CROSS_SPEC_STATUS_RESOURCE_CAP = 3,
  CROSS_SPEC_STATUS_NUMERICAL = 4,
  CROSS_SPEC_STATUS_INVALID_ARGUMENT = 5,
  CROSS_SPEC_STATUS_INVALID_UTF8 = 6,
  // A value does not fit the output type, e.g. a multiplicity above 2^64 − 1.
  CROSS_SPEC_STATUS_OUT_OF_RANGE = 7,
  CROSS_SPEC_STATUS_BUFFER_TOO_SMALL = 8,
  CROSS_SPEC_STATUS_PANIC = 9,
} CrossSpecStatus;

// Opaque parsed metric.
typedef struct CrossSpecMetric CrossSpecMetric;

// Opaque truncated spectrum.
typedef struct CrossSpecSpectrum CrossSpecSpectrum;

// Result of [`cross_spec_stability`].
typedef struct CrossSpecStability {
  double lambda1;
  double scal;
  // λ₁ − scal/(dim − 1).
  double jacobi_gap;
  enum CrossSpecClass classification;
  // Zero unless `classification` is `Unstable`.
  uint64_t morse_index;
} CrossSpecStability;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty if none. The pointer stays
// valid until the next failing call on the same thread.
const char *cross_spec_last_error(void);

// Parses a metric such as `S7:h(0.5,1,1)` or `CP3:hcheck(0.7)*scale=2`.
//
// # Safety
// `text` must be a valid NUL-terminated string and `out` a valid pointer. On success
// `*out` owns a handle to be released with [`cross_spec_metric_free`].
enum CrossSpecStatus cross_spec_metric_parse(const char *text, struct CrossSpecMetric **out);

// # Safety
// `m` must be null or a handle from [`cross_spec_metric_parse`] not yet freed.
void cross_spec_metric_free(struct CrossSpecMetric *m);

// Canonical text of a metric; release with [`cross_spec_string_free`].
//
// # Safety
// `m` must be a live metric handle and `out` a valid pointer.
enum CrossSpecStatus cross_spec_metric_to_string(const struct CrossSpecMetric *m, char **out);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void cross_spec_string_free(char *s);

// # Safety
// `m` must be a live metric handle and `out` a valid pointer.
enum CrossSpecStatus cross_spec_metric_dimension(const struct CrossSpecMetric *m, uint32_t *out);

// Volume and scalar curvature.
//
// # Safety
// `m` must be a live metric handle; `volume` and `scal` valid pointers.
enum CrossSpecStatus cross_spec_geometry(const struct CrossSpecMetric *m,
                                         double *volume,
                                         double *scal);

// First positive eigenvalue and its multiplicity.
//
// # Safety
// `m` must be a live metric handle; `value` and `multiplicity` valid pointers.
enum CrossSpecStatus cross_spec_lambda1(const struct CrossSpecMetric *m,
                                        double *value,
                                        uint64_t *multiplicity);

// Yamabe stability classification.
//
// # Safety
// `m` must be a live metric handle and `out` a valid pointer.
enum CrossSpecStatus cross_spec_stability(const struct CrossSpecMetric *m,
                                          struct CrossSpecStability *out);

// Coalesced eigenvalues up to `cutoff`; release with [`cross_spec_spectrum_free`].
//
// # Safety
// `m` must be a live metric handle and `out` a valid pointer.
enum CrossSpecStatus cross_spec_spectrum(const struct CrossSpecMetric *m,
                                         double cutoff,
                                         struct CrossSpecSpectrum **out);

// Number of levels; zero for a null handle.
//
// # Safety
// `s` must be null or a live spectrum handle.
size_t cross_spec_spectrum_len(const struct CrossSpecSpectrum *s);

// Level `index` (0-based) in increasing order.
//
// # Safety
// `s` must be a live spectrum handle; `value` and `multiplicity` valid pointers.
enum CrossSpecStatus cross_spec_spectrum_level(const struct CrossSpecSpectrum *s,
                                               size_t index,
                                               double *value,
                                               uint64_t *multiplicity);

// # Safety
// `s` must be null or a handle from [`cross_spec_spectrum`] not yet freed.
void cross_spec_spectrum_free(struct CrossSpecSpectrum *s);

// The k+1 eigenvalues of the SU(2) operator on the k-th irreducible representation for
// axes (a, b, c), ascending. `*len` receives k+1 even when `cap` is too small.
//
// # Safety
// `out` must point to at least `cap` writable doubles (or be null with `cap == 0`);
// `len` must be a valid pointer.
enum CrossSpecStatus cross_spec_nu_spectrum(int64_t k,
                                            double a,
                                            double b,
                                            double c,
                                            double *out,
                                            size_t cap,
                                            size_t *len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CROSS_SPEC_H */
