#ifndef HDEPTH_H
#define HDEPTH_H

/* Generated by cbindgen from crates/ffi. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum HdStatus {
  HD_STATUS_OK = 0,
  HD_STATUS_NULL_POINTER = 1,
  HD_STATUS_INVALID_UTF8 = 2,
  HD_STATUS_PARSE = 3,
  HD_STATUS_DOMAIN = 4,
  HD_STATUS_CONTAINMENT = 5,
  HD_STATUS_CAPACITY = 6,
  HD_STATUS_RANGE = 7,
  HD_STATUS_UNKNOWN_PREDICATE = 8,
  HD_STATUS_BUFFER_TOO_SMALL = 9,
  HD_STATUS_PANIC = 10,
} HdStatus;

/**
 * Opaque squarefree monomial ideal.
 */
typedef struct HdIdeal HdIdeal;

/**
 * Opaque Hilbert depth report.
 */
typedef struct HdReport HdReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf`.
 */
enum HdStatus hd_last_error(char *buf, size_t cap, size_t *len_out);

/**
 * `C(n, k)` for `n <= 40`; zero when `k` is out of range.
 */
enum HdStatus hd_binom(uint32_t n, int64_t k, int64_t *out);

/**
 * Parses a generator list (`x1*x2, x2*x3`, `0`, `1`) over `n` variables.
 */
enum HdStatus hd_ideal_parse(const char *text, uint32_t n, struct HdIdeal **out);

void hd_ideal_free(struct HdIdeal *ideal);

uint32_t hd_ideal_n(const struct HdIdeal *ideal);

/**
 * Minimal generators as bitmasks (bit `i - 1` is variable `x_i`).
 */
enum HdStatus hd_ideal_generators(const struct HdIdeal *ideal,
                                  uint64_t *buf,
                                  size_t cap,
                                  size_t *len_out);

/**
 * Canonical text form of the ideal, NUL-terminated.
 */
enum HdStatus hd_ideal_to_string(const struct HdIdeal *ideal,
                                 char *buf,
                                 size_t cap,
                                 size_t *len_out);

/**
 * Hilbert depth of a module from its α-vector (`len = n + 1` counts).
 */
enum HdStatus hd_hdepth_from_alpha(const uint64_t *counts, size_t len, uint32_t *out);

/**
 * Full report for `0 ⊊ I ⊊ S`.
 */
enum HdStatus hd_report_new(const struct HdIdeal *ideal, struct HdReport **out);

void hd_report_free(struct HdReport *report);

/**
 * Writes `hdepth(S/I)` and `hdepth(I)`.
 */
enum HdStatus hd_report_hdepths(const struct HdReport *report,
                                uint32_t *quotient_out,
                                uint32_t *ideal_out);

/**
 * Principal and `I ⊆ m²` flags.
 */
enum HdStatus hd_report_flags(const struct HdReport *report, bool *principal_out, bool *in_m2_out);

/**
 * α-vector of `S/I` (`quotient = true`) or of `I`.
 */
enum HdStatus hd_report_alpha(const struct HdReport *report,
                              bool quotient,
                              uint64_t *buf,
                              size_t cap,
                              size_t *len_out);

/**
 * β-row at level `q` of `S/I` (`quotient = true`) or of `I`. Fails with
 * `HD_STATUS_RANGE` if an entry does not fit in 64 bits.
 */
enum HdStatus hd_report_beta(const struct HdReport *report,
                             bool quotient,
                             uint32_t q,
                             int64_t *buf,
                             size_t cap,
                             size_t *len_out);

/**
 * The report as JSON (α and β entries as decimal strings).
 */
enum HdStatus hd_report_to_json(const struct HdReport *report,
                                char *buf,
                                size_t cap,
                                size_t *len_out);

/**
 * Runs one named check (`teo1`, `lem`, `beta-q6`, `lemma79`, `main`,
 * `kruskal-katona`, `beta47-bound`) on a report.
 */
enum HdStatus hd_report_check(const struct HdReport *report,
                              const char *predicate,
                              bool *applicable_out,
                              bool *passed_out);

/**
 * Runs the check suite over every proper nonzero ideal with `1 <= n <= n_max`
 * (`n_max <= 6`), reporting instance and failure counts.
 */
enum HdStatus hd_verify_exhaustive(uint32_t n_max,
                                   uint32_t workers,
                                   uint64_t *instances_out,
                                   uint64_t *failures_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HDEPTH_H */
