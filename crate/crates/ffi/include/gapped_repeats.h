#ifndef GAPPED_REPEATS_H
#define GAPPED_REPEATS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

enum GrStatus
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  GR_STATUS_OK = 0,
  GR_STATUS_NULL_POINTER = 1,
  GR_STATUS_INVALID_UTF8 = 2,
  GR_STATUS_INVALID_ARGUMENT = 3,
  /*
   A copy length fell outside the constraint domain.
   */
  GR_STATUS_DOMAIN = 4,
  GR_STATUS_TAXONOMY = 5,
  GR_STATUS_USAGE = 6,
  GR_STATUS_IO = 7,
  GR_STATUS_OUT_OF_RANGE = 8,
  GR_STATUS_BUFFER_TOO_SMALL = 9,
  /*
   A value does not fit the C type it is returned in.
   */
  GR_STATUS_OVERFLOW = 10,
  GR_STATUS_PANIC = 11,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum GrStatus GrStatus;
#else
typedef int32_t GrStatus;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

typedef enum GrClass {
  GR_CLASS_PRIVATE = 0,
  GR_CLASS_PPP = 1,
  GR_CLASS_SPP = 2,
  GR_CLASS_TPP = 3,
  GR_CLASS_PSP = 4,
  GR_CLASS_SSP = 5,
  /*
   Both prefix and suffix semiperiodic.
   */
  GR_CLASS_PSP_SSP = 6,
  GR_CLASS_ORDINARY = 7,
} GrClass;

typedef enum GrGenerator {
  GR_GENERATOR_RANDOM = 0,
  GR_GENERATOR_FIBONACCI = 1,
  GR_GENERATOR_THUE_MORSE = 2,
  GR_GENERATOR_POWER = 3,
} GrGenerator;

/*
 Parsed gap constraint.
 */
typedef struct GrConstraint GrConstraint;

/*
 Classified maximal gapped repeats of one word.
 */
typedef struct GrRepeats GrRepeats;

/*
 Runs of one word.
 */
typedef struct GrRuns GrRuns;

typedef struct GrRepeat {
  uint64_t beg1;
  uint64_t end1;
  uint64_t beg2;
  uint64_t end2;
  uint64_t period;
  uint64_t copy_len;
  uint64_t gap_len;
} GrRepeat;

typedef struct GrRun {
  uint64_t beg;
  uint64_t end;
  uint64_t period;
  int64_t exp_num;
  int64_t exp_den;
} GrRun;

typedef struct GrBound {
  uint64_t n;
  uint64_t count;
  int64_t bound_num;
  int64_t bound_den;
} GrBound;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failure on this thread, or null. Valid until the
 next failing call on the same thread.
 */
const char *gr_last_error(void);

/*
 Parses a constraint spec such as `alpha:2` or `band:1:10` over `1..=domain`.

 # Safety
 `spec` must be a NUL-terminated string; `out` must be writable.
 */
GrStatus gr_constraint_parse(const char *spec, uint64_t domain, struct GrConstraint **out);

/*
 # Safety
 `con` must come from [`gr_constraint_parse`] and not be freed twice.
 */
void gr_constraint_free(struct GrConstraint *con);

/*
 Classified maximal gapped repeats of `word`. With a null `con` every
 maximal gapped repeat is returned, otherwise only those admitted by it.

 # Safety
 `word` must point to `len` readable bytes; `con` must be null or valid;
 `out` must be writable.
 */
GrStatus gr_repeats_new(const uint8_t *word,
                        size_t len,
                        const struct GrConstraint *con,
                        struct GrRepeats **out);

/*
 # Safety
 `set` must be null or a live handle.
 */
size_t gr_repeats_len(const struct GrRepeats *set);

/*
 Copies repeat `index` (0-based) and its class into the outputs; either
 output may be null.

 # Safety
 `set` must be a live handle; non-null outputs must be writable.
 */
GrStatus gr_repeats_get(const struct GrRepeats *set,
                        size_t index,
                        struct GrRepeat *out,
                        enum GrClass *class_);

/*
 # Safety
 `set` must come from [`gr_repeats_new`] and not be freed twice.
 */
void gr_repeats_free(struct GrRepeats *set);

/*
 All runs of `word`, sorted by `(beg, end)`.

 # Safety
 `word` must point to `len` readable bytes; `out` must be writable.
 */
GrStatus gr_runs_new(const uint8_t *word, size_t len, struct GrRuns **out);

/*
 # Safety
 `set` must be null or a live handle.
 */
size_t gr_runs_len(const struct GrRuns *set);

/*
 # Safety
 `set` must be a live handle; `out` must be writable.
 */
GrStatus gr_runs_get(const struct GrRuns *set, size_t index, struct GrRun *out);

/*
 # Safety
 `set` must come from [`gr_runs_new`] and not be freed twice.
 */
void gr_runs_free(struct GrRuns *set);

/*
 Constrained repeat count against `n(1 + max{∂, Δ})` for `word`.

 # Safety
 `word` must point to `len` readable bytes; `con` must be valid; `out`
 must be writable.
 */
GrStatus gr_bound(const uint8_t *word,
                  size_t len,
                  const struct GrConstraint *con,
                  struct GrBound *out);

/*
 Runs every check on `word`; `failed` receives the number of assertable
 checks that failed.

 # Safety
 `word` must point to `len` readable bytes; `con` must be valid; `failed`
 must be writable.
 */
GrStatus gr_verify(const uint8_t *word,
                   size_t len,
                   const struct GrConstraint *con,
                   uint32_t *failed);

/*
 Writes a generated word into `buf`. `length` is ignored for
 [`GrGenerator::Power`], which repeats `block` `count` times; `alphabet`
 and `seed` apply to [`GrGenerator::Random`] only. `written` always receives the needed length, so a
 call with `cap == 0` sizes the buffer.

 # Safety
 `block` must point to `block_len` bytes when used; `buf` to `cap`
 writable bytes; `written` must be writable.
 */
GrStatus gr_generate(enum GrGenerator kind,
                     size_t length,
                     uint32_t alphabet,
                     uint64_t seed,
                     const uint8_t *block,
                     size_t block_len,
                     size_t count,
                     uint8_t *buf,
                     size_t cap,
                     size_t *written);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAPPED_REPEATS_H */
