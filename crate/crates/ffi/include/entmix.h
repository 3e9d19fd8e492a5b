/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef ENTMIX_H
#define ENTMIX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum EntmixStatus {
  ENTMIX_STATUS_OK = 0,
  ENTMIX_STATUS_NULL_POINTER = 1,
  ENTMIX_STATUS_INVALID_ARGUMENT = 2,
  ENTMIX_STATUS_PARSE = 3,
  ENTMIX_STATUS_SHAPE = 4,
  ENTMIX_STATUS_CONTRACT = 5,
  ENTMIX_STATUS_POSITIVITY = 6,
  ENTMIX_STATUS_CAPACITY = 7,
  ENTMIX_STATUS_PANIC = 8,
} EntmixStatus;

// Opaque state handle (ket or density matrix).
typedef struct EntmixState EntmixState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *entmix_last_error_message(void);

// Library version as a static nul-terminated string.
const char *entmix_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and must not be used afterwards.
void entmix_string_free(char *s);

// Releases a state handle. Null is ignored.
//
// # Safety
// `state` must come from this library and must not be used afterwards.
void entmix_state_free(struct EntmixState *state);

// Parses a JSON state.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum EntmixStatus entmix_state_from_json(const char *json, struct EntmixState **out);

// Serializes a state to JSON; free the result with `entmix_string_free`.
//
// # Safety
// `state` must be a live handle; `out` must be writable.
enum EntmixStatus entmix_state_to_json(const struct EntmixState *state, char **out);

// Number of subsystems, local dimension and total dimension.
//
// # Safety
// `state` must be a live handle; each output pointer may be null.
enum EntmixStatus entmix_state_shape(const struct EntmixState *state,
                                     size_t *n,
                                     size_t *d,
                                     size_t *dim);

// Builds a family member from a reference such as `ghz:n=4,sign=-`.
//
// # Safety
// `reference` must be a nul-terminated string; `out` must be writable.
enum EntmixStatus entmix_construct(const char *reference, struct EntmixState **out);

// GHZ state; `sign` is 0 for the default, +1 or -1 for qubits.
//
// # Safety
// `out` must be writable.
enum EntmixStatus entmix_ghz(size_t n, size_t d, int sign, struct EntmixState **out);

// Dicke state with `m` excitations on `n` qubits.
//
// # Safety
// `out` must be writable.
enum EntmixStatus entmix_dicke(size_t n, size_t m, struct EntmixState **out);

// W state on `n` qubits.
//
// # Safety
// `out` must be writable.
enum EntmixStatus entmix_w(size_t n, struct EntmixState **out);

// Bell state: 0 psi+, 1 psi-, 2 phi+, 3 phi-.
//
// # Safety
// `out` must be writable.
enum EntmixStatus entmix_bell(int which, struct EntmixState **out);

// Størmer two-qutrit state, `0 <= alpha <= 5`.
//
// # Safety
// `out` must be writable.
enum EntmixStatus entmix_stormer(double alpha, struct EntmixState **out);

// Closed-form purity of the Størmer family, valid for any real `alpha`.
double entmix_stormer_purity(double alpha);

// `tr rho^2`.
//
// # Safety
// `state` must be a live handle; `out` must be writable.
enum EntmixStatus entmix_purity(const struct EntmixState *state, double *out);

// Whether some one-qudit marginal is less pure than the whole state.
//
// # Safety
// `state` must be a live handle; `out` must be writable.
enum EntmixStatus entmix_purity_detected(const struct EntmixState *state, bool *out);

// Wootters concurrence of a two-qubit state.
//
// # Safety
// `state` must be a live handle; `out` must be writable.
enum EntmixStatus entmix_concurrence(const struct EntmixState *state, double *out);

// Smallest eigenvalue of the partial transpose over the 1-based
// subsystem labels in `labels[0..len]`.
//
// # Safety
// `state` must be a live handle; `labels` must point to `len` values;
// `out` must be writable.
enum EntmixStatus entmix_ppt_min_eigenvalue(const struct EntmixState *state,
                                            const size_t *labels,
                                            size_t len,
                                            double *out);

// Full detection report as JSON; free the result with `entmix_string_free`.
//
// # Safety
// `state` must be a live handle; `out` must be writable.
enum EntmixStatus entmix_detect_json(const struct EntmixState *state, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENTMIX_H */
