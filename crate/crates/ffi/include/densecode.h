#ifndef DENSECODE_H
#define DENSECODE_H

#pragma once

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum DcStatus {
  DC_STATUS_OK = 0,
  DC_STATUS_NULL_POINTER = 1,
  DC_STATUS_INVALID_UTF8 = 2,
  DC_STATUS_INVALID_INPUT = 3,
  DC_STATUS_NUMERICAL = 4,
  DC_STATUS_PANIC = 5,
} DcStatus;

/**
 * Dense-coding shell, weakest to strongest.
 */
typedef enum DcShell {
  DC_SHELL_SEPARABLE_OR_PPT_BOUND = 0,
  DC_SHELL_NPT_UNDETERMINED = 1,
  DC_SHELL_DISTILLABLE = 2,
  DC_SHELL_GLOBAL_DC = 3,
  DC_SHELL_LOCC_DC = 4,
  DC_SHELL_LO_DC = 5,
} DcShell;

/**
 * Opaque sender/receiver layout.
 */
typedef struct DcLayout DcLayout;

/**
 * Opaque multipartite density matrix.
 */
typedef struct DcState DcState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread; empty after a
 * successful call. Valid until the next call on the same thread.
 */
const char *dc_last_error(void);

/**
 * Builds a state from a JSON state spec (constructor or explicit form).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum DcStatus dc_state_from_json(const char *json, double tol, struct DcState **out);

/**
 * Werner state `p|ψ⁻⟩⟨ψ⁻| + (1−p)I/4` on parties `A`, `B`.
 *
 * # Safety
 * `out` must be writable.
 */
enum DcStatus dc_state_werner(double p, struct DcState **out);

/**
 * `n`-qubit GHZ state with default labels.
 *
 * # Safety
 * `out` must be writable.
 */
enum DcStatus dc_state_ghz(size_t n, struct DcState **out);

/**
 * Total Hilbert-space dimension of a state.
 *
 * # Safety
 * `state` must be a live handle or null; `out` must be writable.
 */
enum DcStatus dc_state_dim(const struct DcState *state, size_t *out);

/**
 * Number of parties of a state.
 *
 * # Safety
 * `state` must be a live handle or null; `out` must be writable.
 */
enum DcStatus dc_state_num_parties(const struct DcState *state, size_t *out);

/**
 * # Safety
 * `state` must come from a `dc_state_*` constructor and not be freed twice.
 */
void dc_state_free(struct DcState *state);

/**
 * Builds a layout from `{"senders": [...], "receivers": [...], "routing": {...}}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum DcStatus dc_layout_from_json(const char *json, struct DcLayout **out);

/**
 * Two-receiver layout for the `n`-qubit GHZ labels.
 *
 * # Safety
 * `out` must be writable.
 */
enum DcStatus dc_layout_ghz(size_t n, struct DcLayout **out);

/**
 * # Safety
 * `layout` must come from a `dc_layout_*` constructor and not be freed twice.
 */
void dc_layout_free(struct DcLayout *layout);

/**
 * Clamped capacity in bits and, if `raw_excess` is non-null, the unclamped
 * excess over the classical baseline.
 *
 * # Safety
 * Handles must be live; `capacity` must be writable; `raw_excess` may be null.
 */
enum DcStatus dc_capacity(const struct DcState *state,
                          const struct DcLayout *layout,
                          double *capacity,
                          double *raw_excess);

/**
 * Upper bound on the capacity when two receivers decode by LOCC.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum DcStatus dc_locc_upper_bound(const struct DcState *state,
                                  const struct DcLayout *layout,
                                  double *out);

/**
 * Capacity when each receiver decodes alone.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum DcStatus dc_lo_capacity(const struct DcState *state,
                             const struct DcLayout *layout,
                             double *out);

/**
 * Classifies a state. `shell` receives the shell; if `report_json` is
 * non-null it receives the full report as JSON (free with `dc_string_free`).
 *
 * # Safety
 * Handles must be live; `shell` must be writable; `report_json` may be null.
 */
enum DcStatus dc_classify(const struct DcState *state,
                          const struct DcLayout *layout,
                          double tol,
                          bool all_cuts,
                          enum DcShell *shell,
                          char **report_json);

/**
 * Werner parameter above which the state beats classical transmission.
 *
 * # Safety
 * `out` must be writable.
 */
enum DcStatus dc_werner_threshold(double *out);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void dc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DENSECODE_H */
