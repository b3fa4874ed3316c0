/* C interface for the det3 orbit-boundary certifier. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status code for every FFI entry point.
typedef enum det3cert_status {
  DET3CERT_STATUS_OK = 0,
  DET3CERT_STATUS_NULL_POINTER = 1,
  DET3CERT_STATUS_INVALID_UTF8 = 2,
  DET3CERT_STATUS_UNKNOWN_CHECK = 3,
  DET3CERT_STATUS_PARSE_ERROR = 4,
  DET3CERT_STATUS_ZERO_FORM = 5,
  DET3CERT_STATUS_INTERNAL_ERROR = 6,
} det3cert_status;

// Opaque certification report. Create with [`det3cert_run_all`] or
// [`det3cert_run_check`]; free with [`det3cert_report_free`].
typedef struct det3cert_report det3cert_report;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Run the full check battery. On success writes a new report handle to
// `out`.
//
// # Safety
// `out` must be a valid pointer to writable memory for one pointer.
enum det3cert_status det3cert_run_all(uint64_t seed, uint32_t trials, struct det3cert_report **out);

// Run a single registered check by id.
//
// # Safety
// `check_id` must be a NUL-terminated string and `out` a valid pointer to
// writable memory for one pointer.
enum det3cert_status det3cert_run_check(const char *check_id,
                                        uint64_t seed,
                                        uint32_t trials,
                                        struct det3cert_report **out);

// Borrow the JSON rendering of a report. The pointer stays valid until the
// report is freed.
//
// # Safety
// `report` must be a live handle from this library (or null, which yields
// null).
const char *det3cert_report_json(const struct det3cert_report *report);

// Number of checks recorded in the report; 0 for null.
//
// # Safety
// `report` must be a live handle or null.
uint32_t det3cert_report_total(const struct det3cert_report *report);

// Number of failing checks; 0 for null.
//
// # Safety
// `report` must be a live handle or null.
uint32_t det3cert_report_failures(const struct det3cert_report *report);

// Number of inconclusive checks; 0 for null.
//
// # Safety
// `report` must be a live handle or null.
uint32_t det3cert_report_inconclusive(const struct det3cert_report *report);

// Release a report handle. Null is a no-op.
//
// # Safety
// `report` must be a handle from this library that has not been freed.
void det3cert_report_free(struct det3cert_report *report);

// Newline-separated list of the registered check ids. Free with
// [`det3cert_string_free`].
char *det3cert_list_checks(void);

// Release a string returned by this library. Null is a no-op.
//
// # Safety
// `s` must have been returned by this library and not yet freed.
void det3cert_string_free(char *s);

// Derivative-span dimension of the form given in text format.
//
// # Safety
// `form_text` must be a NUL-terminated string, `out` writable.
enum det3cert_status det3cert_nu(const char *form_text, uint32_t *out);

// Stabilizer Lie-algebra dimension of the form given in text format.
//
// # Safety
// `form_text` must be a NUL-terminated string, `out` writable.
enum det3cert_status det3cert_stab_lie_dim(const char *form_text, uint32_t *out);

// Projective orbit dimension (80 minus the stabilizer dimension) of the
// form given in text format.
//
// # Safety
// `form_text` must be a NUL-terminated string, `out` writable.
enum det3cert_status det3cert_orbit_dim(const char *form_text, uint32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
