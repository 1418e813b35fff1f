#ifndef LPOD_LAB_H
#define LPOD_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LpodMode {
  LPOD_MODE_MOST_PREFERRED = 0,
  LPOD_MODE_ALL_ANSWER_SETS = 1,
  LPOD_MODE_NORMAL = 2,
} LpodMode;

typedef enum LpodStatus {
  LPOD_STATUS_OK = 0,
  /**
   * The programs are not strongly equivalent (the call itself succeeded).
   */
  LPOD_STATUS_NOT_EQUIVALENT = 1,
  LPOD_STATUS_PARSE_ERROR = 2,
  LPOD_STATUS_CAP_EXCEEDED = 3,
  LPOD_STATUS_INVALID_ARGUMENT = 4,
  /**
   * A constructed context failed its own verification.
   */
  LPOD_STATUS_VERIFICATION_FAILED = 5,
  LPOD_STATUS_INTERNAL = 6,
} LpodStatus;

/**
 * Opaque parsed program.
 */
typedef struct LpodProgram LpodProgram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses program text into a new handle stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LpodStatus lpod_program_parse(const char *text, struct LpodProgram **out);

/**
 * # Safety
 * `program` must come from this library and not have been freed; null is ignored.
 */
void lpod_program_free(struct LpodProgram *program);

/**
 * Program text, one rule per line; null if `program` is null.
 *
 * # Safety
 * `program` must be a live handle or null.
 */
char *lpod_program_to_string(const struct LpodProgram *program);

/**
 * Number of atoms of the program, 0 for null.
 *
 * # Safety
 * `program` must be a live handle or null.
 */
size_t lpod_program_atom_count(const struct LpodProgram *program);

/**
 * All four-valued models (only those without `F*` when `three_valued`).
 * A `cap` of 0 selects the default.
 *
 * # Safety
 * `program` must be a live handle and `out_json` a valid pointer.
 */
enum LpodStatus lpod_models_json(const struct LpodProgram *program,
                                 size_t cap,
                                 bool three_valued,
                                 char **out_json);

/**
 * # Safety
 * `program` must be a live handle and `out_json` a valid pointer.
 */
enum LpodStatus lpod_answer_sets_json(const struct LpodProgram *program,
                                      size_t cap,
                                      char **out_json);

/**
 * # Safety
 * `program` must be a live handle and `out_json` a valid pointer.
 */
enum LpodStatus lpod_most_preferred_json(const struct LpodProgram *program,
                                         size_t cap,
                                         char **out_json);

/**
 * Stable models of a normal program; `LPOD_STATUS_INVALID_ARGUMENT` otherwise.
 *
 * # Safety
 * `program` must be a live handle and `out_json` a valid pointer.
 */
enum LpodStatus lpod_stable_models_json(const struct LpodProgram *program,
                                        size_t cap,
                                        char **out_json);

/**
 * Strong equivalence. Writes the verdict to `*out_equivalent` and, when
 * `out_json` is non-null, the full verdict with witness and context.
 * Returns `LPOD_STATUS_OK` or `LPOD_STATUS_NOT_EQUIVALENT` on success.
 *
 * # Safety
 * Handles must be live; `out_equivalent` must be valid; `out_json` may be null.
 */
enum LpodStatus lpod_strong_eq(const struct LpodProgram *first,
                               const struct LpodProgram *second,
                               enum LpodMode mode,
                               size_t cap,
                               bool *out_equivalent,
                               char **out_json);

/**
 * Strong equivalence of normal programs under standard answer sets.
 *
 * # Safety
 * As for `lpod_strong_eq`.
 */
enum LpodStatus lpod_normal_strong_eq(const struct LpodProgram *first,
                                      const struct LpodProgram *second,
                                      size_t cap,
                                      bool *out_equivalent,
                                      char **out_json);

/**
 * Builds the reduction programs from DIMACS text into two new handles.
 *
 * # Safety
 * `dimacs` must be a NUL-terminated string; `out_p1`, `out_p2` valid pointers.
 */
enum LpodStatus lpod_reduce_3sat(const char *dimacs,
                                 bool pad,
                                 struct LpodProgram **out_p1,
                                 struct LpodProgram **out_p2);

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *lpod_last_error_message(void);

/**
 * # Safety
 * `s` must be a string returned by this library, or null.
 */
void lpod_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LPOD_LAB_H */
