#ifndef TANGLEBOUND_H
#define TANGLEBOUND_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum TbStatus {
  TbStatus_Ok = 0,
  TbStatus_NullPointer = 1,
  TbStatus_InvalidArgument = 2,
  TbStatus_NotNormalized = 3,
  TbStatus_OutOfRange = 4,
  TbStatus_Numerical = 5,
  TbStatus_Panic = 6,
} TbStatus;

/**
 * Qubit triples, passed as `uint32_t`.
 */
typedef enum TbTriple {
  TbTriple_A1A2A3 = 0,
  TbTriple_A1A2A4 = 1,
  TbTriple_A1A3A4 = 2,
} TbTriple;

/**
 * Traced qubits, passed as `uint32_t`.
 */
typedef enum TbTraced {
  TbTraced_A2 = 2,
  TbTraced_A3 = 3,
  TbTraced_A4 = 4,
} TbTraced;

/**
 * Opaque normalized four-qubit pure state.
 */
typedef struct TbState4 TbState4;

/**
 * Degree-8 summary of one qubit triple.
 */
typedef struct TbCorrelation {
  double n48;
  double abs_i48;
  double tau48;
  double three_way;
} TbCorrelation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * Valid until the next call on the same thread.
 */
const char *tb_last_error(void);

/**
 * Creates a state from 32 doubles (16 interleaved re/im amplitudes, index
 * `8 i1 + 4 i2 + 2 i3 + i4`). The amplitudes must be normalized unless
 * `normalize` is nonzero.
 *
 * # Safety
 * `amps` must point to `len` readable doubles and `out` to a writable pointer.
 */
enum TbStatus tb_state4_new(const double *amps,
                            size_t len,
                            int32_t normalize,
                            struct TbState4 **out);

/**
 * Releases a state; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void tb_state4_free(struct TbState4 *s);

/**
 * Copies the 16 amplitudes as 32 interleaved doubles into `out`.
 *
 * # Safety
 * `s` must be a live handle and `out` must hold 32 doubles.
 */
enum TbStatus tb_state4_amps(const struct TbState4 *s, double *out);

/**
 * Normalized representative of class `class_id` (1-9). `params` holds
 * interleaved re/im pairs for the parameters the class takes, in a, b, c, d
 * order; `n_params` counts complex values.
 *
 * # Safety
 * `params` must point to `2 * n_params` doubles (may be null when zero) and
 * `out` to a writable pointer.
 */
enum TbStatus tb_class_representative(uint32_t class_id,
                                      const double *params,
                                      size_t n_params,
                                      struct TbState4 **out);

/**
 * Invariant set for the traced qubit (2, 3 or 4) as 10 doubles:
 * re/im of the 4-0, 3-1, 2-2, 1-3 and 0-4 invariants.
 *
 * # Safety
 * `s` must be a live handle and `out` must hold 10 doubles.
 */
enum TbStatus tb_invariants(const struct TbState4 *s, uint32_t traced, double *out);

/**
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum TbStatus tb_correlation(const struct TbState4 *s, uint32_t triple, struct TbCorrelation *out);

/**
 * Best certified upper bound on the three-tangle of the reduced state.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum TbStatus tb_best_bound(const struct TbState4 *s, uint32_t triple, double *out);

/**
 * Full bound report as a JSON string; release with `tb_string_free`.
 *
 * # Safety
 * `s` must be a live handle and `out` a writable pointer.
 */
enum TbStatus tb_report_json(const struct TbState4 *s, uint32_t triple, char **out);

/**
 * # Safety
 * `p` must come from this library; null is ignored.
 */
void tb_string_free(char *p);

/**
 * GHZ weight below which the GHZ/W mixture has zero three-tangle.
 */
double tb_ghzw_threshold(void);

/**
 * Three-tangle bound of the GHZ/W mixture with GHZ weight `p`.
 *
 * # Safety
 * `out` must be writable.
 */
enum TbStatus tb_ghzw_bound(double p, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TANGLEBOUND_H */
