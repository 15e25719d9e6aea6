#ifndef RADCOMP_H
#define RADCOMP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RadcompStatus {
  RADCOMP_STATUS_OK = 0,
  RADCOMP_STATUS_NULL_ARGUMENT = 1,
  RADCOMP_STATUS_INVALID_PARAMS = 2,
  RADCOMP_STATUS_PARSE = 3,
  RADCOMP_STATUS_NO_COMPLEMENT = 4,
  RADCOMP_STATUS_COMPLEMENT_EXISTS = 5,
  RADCOMP_STATUS_NOT_CERTIFIABLE = 6,
  RADCOMP_STATUS_SEARCH_LIMIT = 7,
  RADCOMP_STATUS_INTERNAL = 8,
} RadcompStatus;

// A decision with its evidence.
typedef struct RadcompDecision RadcompDecision;

// Ring parameters `(p, n, k)`.
typedef struct RadcompParams RadcompParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code.
const char *radcomp_status_message(enum RadcompStatus status);

// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum RadcompStatus radcomp_params_new(uint64_t p, size_t n, uint32_t k, struct RadcompParams **out);

// # Safety
// `params` must be null or a handle from [`radcomp_params_new`] not yet
// freed.
void radcomp_params_free(struct RadcompParams *params);

// # Safety
// `params` must be a live handle; `out` must be writable.
enum RadcompStatus radcomp_decide(const struct RadcompParams *params, struct RadcompDecision **out);

// # Safety
// `decision` must be a live handle.
bool radcomp_decision_exists(const struct RadcompDecision *decision);

// Justification code as a static string, or null for a null handle.
//
// # Safety
// `decision` must be null or a live handle.
const char *radcomp_decision_justification(const struct RadcompDecision *decision);

// # Safety
// `decision` must be a live handle; `out` must be writable. The string is
// released with [`radcomp_string_free`].
enum RadcompStatus radcomp_decision_to_json(const struct RadcompDecision *decision, char **out);

// # Safety
// `decision` must be null or a handle from [`radcomp_decide`] not yet freed.
void radcomp_decision_free(struct RadcompDecision *decision);

// Verified section as JSON.
//
// # Safety
// `params` must be a live handle; `out` must be writable.
enum RadcompStatus radcomp_witness_json(const struct RadcompParams *params, char **out);

// Nonexistence certificate as JSON.
//
// # Safety
// `params` must be a live handle; `out` must be writable.
enum RadcompStatus radcomp_certify_no_json(const struct RadcompParams *params, char **out);

// Re-checks a witness, certificate or decision given as JSON.
//
// # Safety
// `json` must be a NUL-terminated string; `valid` must be writable.
enum RadcompStatus radcomp_verify_json(const char *json, bool *valid);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void radcomp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RADCOMP_H */
