#ifndef MOCONAD_H
#define MOCONAD_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
enum MoconadStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  MOCONAD_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  MOCONAD_STATUS_NULL_POINTER = 1,
  /**
   * Malformed JSON, an invalid document, or a string that is not UTF-8.
   */
  MOCONAD_STATUS_SCHEMA = 2,
  /**
   * A well-formed input outside the operation's domain.
   */
  MOCONAD_STATUS_DOMAIN = 3,
  /**
   * An internal error; the library caught a panic.
   */
  MOCONAD_STATUS_PANIC = 5,
};
#ifndef __cplusplus
typedef int32_t MoconadStatus;
#endif // __cplusplus

/**
 * A Mealy machine handle, deterministic or unambiguous.
 */
typedef struct MoconadMealy MoconadMealy;

/**
 * A transduction handle.
 */
typedef struct MoconadTransduction MoconadTransduction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a transduction document.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
MoconadStatus moconad_transduction_from_json(const char *json, struct MoconadTransduction **out);

/**
 * Writes the canonical document of a transduction.
 *
 * # Safety
 * `t` must come from this library; `out` must be a valid pointer. The
 * string is released with [`moconad_string_free`].
 */
MoconadStatus moconad_transduction_to_json(const struct MoconadTransduction *t, char **out);

/**
 * Applies a transduction.
 *
 * The input is a JSON array of letters or a `word`, `pointed-word` or
 * `term` document. Words given to a pointed-list transduction produce
 * words. The output is the canonical document of the result.
 *
 * # Safety
 * `t` must come from this library, `input_json` must be nul-terminated and
 * `out` a valid pointer.
 */
MoconadStatus moconad_transduction_apply(const struct MoconadTransduction *t,
                                         const char *input_json,
                                         char **out);

/**
 * Composes two transductions, `first` applied first.
 *
 * # Safety
 * Both handles must come from this library; `out` must be a valid pointer.
 */
MoconadStatus moconad_transduction_compose(const struct MoconadTransduction *first,
                                           const struct MoconadTransduction *second,
                                           struct MoconadTransduction **out);

/**
 * Releases a transduction. Null is ignored.
 *
 * # Safety
 * `t` must come from this library and not be used afterwards.
 */
void moconad_transduction_free(struct MoconadTransduction *t);

/**
 * Parses a `mealy` or `unambiguous-mealy` document.
 *
 * # Safety
 * `json` must be nul-terminated and `out` a valid pointer.
 */
MoconadStatus moconad_mealy_from_json(const char *json, struct MoconadMealy **out);

/**
 * Runs a machine on a word given as a JSON array of letters and writes
 * the output word as a JSON array.
 *
 * # Safety
 * `m` must come from this library, `word_json` must be nul-terminated and
 * `out` a valid pointer.
 */
MoconadStatus moconad_mealy_run(const struct MoconadMealy *m, const char *word_json, char **out);

/**
 * Releases a machine. Null is ignored.
 *
 * # Safety
 * `m` must come from this library and not be used afterwards.
 */
void moconad_mealy_free(struct MoconadMealy *m);

/**
 * Checks every law for a functor exhaustively. A zero `bound` or
 * `domain_size` selects the default. `all_passed` receives 1 or 0; when
 * `report_json` is not null it receives the JSON report.
 *
 * # Safety
 * `functor` must be nul-terminated; `all_passed` must be valid;
 * `report_json` may be null.
 */
MoconadStatus moconad_check_laws(const char *functor,
                                 uint32_t bound,
                                 uint32_t domain_size,
                                 int32_t *all_passed,
                                 char **report_json);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void moconad_string_free(char *s);

/**
 * The message of the last failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *moconad_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOCONAD_H */
