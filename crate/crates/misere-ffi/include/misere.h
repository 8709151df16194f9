#ifndef MISERE_H
#define MISERE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MisereConvention {
  MISERE_CONVENTION_MISERE = 0,
  MISERE_CONVENTION_NORMAL = 1,
} MisereConvention;

typedef enum MisereOutcome {
  MISERE_OUTCOME_L = 0,
  MISERE_OUTCOME_R = 1,
  MISERE_OUTCOME_N = 2,
  MISERE_OUTCOME_P = 3,
} MisereOutcome;

typedef enum MisereStatus {
  MISERE_STATUS_OK = 0,
  MISERE_STATUS_NULL_ARG = 1,
  MISERE_STATUS_PARSE = 2,
  MISERE_STATUS_INVALID_ARG = 3,
  MISERE_STATUS_BUFFER_TOO_SMALL = 4,
  MISERE_STATUS_PRECONDITION = 5,
  MISERE_STATUS_PANIC = 6,
} MisereStatus;

// Opaque engine handle.
typedef struct MisereEngine MisereEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

struct MisereEngine *misere_engine_new(void);

// # Safety
// `engine` is null or a handle from `misere_engine_new` not yet freed.
void misere_engine_free(struct MisereEngine *engine);

// Parses a single position (sums are compiled into one tree).
//
// # Safety
// `engine` is a live handle, `expr` a NUL-terminated string, `out_id` writable.
enum MisereStatus misere_parse(const struct MisereEngine *engine,
                               const char *expr,
                               uint32_t *out_id);

// Outcome of a sum of positions.
//
// # Safety
// `ids` points at `len` ids (may be null when `len` is 0); `out` is writable.
enum MisereStatus misere_sum_outcome(const struct MisereEngine *engine,
                                     const uint32_t *ids,
                                     uintptr_t len,
                                     enum MisereConvention convention,
                                     enum MisereOutcome *out);

// # Safety
// As for `misere_sum_outcome` with a single id.
enum MisereStatus misere_outcome(const struct MisereEngine *engine,
                                 uint32_t id,
                                 enum MisereConvention convention,
                                 enum MisereOutcome *out);

// # Safety
// `engine` is a live handle and `out_id` writable.
enum MisereStatus misere_conjugate(const struct MisereEngine *engine,
                                   uint32_t id,
                                   uint32_t *out_id);

// Writes the canonical text of a position, NUL-terminated.
// `needed` receives the required size including the terminator, also on
// `BUFFER_TOO_SMALL`.
//
// # Safety
// `buf` has room for `len` bytes (may be null when `len` is 0).
enum MisereStatus misere_format(const struct MisereEngine *engine,
                                uint32_t id,
                                char *buf,
                                uintptr_t len,
                                uintptr_t *needed);

// Class count of the misère monoid of the closure of a comma-separated
// generator list. `out_finite` is 1 when the quotient stabilized at the bounds.
//
// # Safety
// `generators` is NUL-terminated; outputs are writable.
enum MisereStatus misere_quotient_classes(const struct MisereEngine *engine,
                                          const char *generators,
                                          uint32_t sum_bound,
                                          uint32_t context_bound,
                                          uint32_t *out_classes,
                                          int32_t *out_finite);

// Static description of a status code.
const char *misere_status_message(enum MisereStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MISERE_H */
