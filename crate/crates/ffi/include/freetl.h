#ifndef FREETL_H
#define FREETL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every call.
 */
typedef enum FreetlStatus {
  FreetlStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  FreetlStatus_NullPointer = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  FreetlStatus_InvalidUtf8 = 2,
  /**
   * A word, sign or delta could not be parsed.
   */
  FreetlStatus_Parse = 3,
  /**
   * Settings out of range (e.g. max_len above 12, symbolic delta where a
   * number is needed).
   */
  FreetlStatus_Config = 4,
  /**
   * The computation is undefined at this delta (vanishing quantum integer).
   */
  FreetlStatus_Singular = 5,
  /**
   * The verification suite found a failing check; the report is still
   * returned.
   */
  FreetlStatus_CheckFailed = 6,
  /**
   * Any other engine error.
   */
  FreetlStatus_Engine = 7,
  /**
   * The engine panicked; this is a bug.
   */
  FreetlStatus_Panic = 8,
} FreetlStatus;

/**
 * Opaque engine handle.
 */
typedef struct FreetlEngine FreetlEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create an engine. `delta` is `"p/q"`, an integer, or `"symbolic"`; NULL
 * means 3. Defaults: max_len 8, fixed seed.
 *
 * # Safety
 * `delta` is NULL or a NUL-terminated string; `out` points to writable
 * storage for one handle.
 */
enum FreetlStatus freetl_engine_new(const char *delta, struct FreetlEngine **out);

/**
 * Release an engine. NULL is ignored.
 *
 * # Safety
 * `engine` is NULL or a handle from [`freetl_engine_new`] not yet freed.
 */
void freetl_engine_free(struct FreetlEngine *engine);

/**
 * Set the largest word length enumerated by table and verify calls (at most 12).
 *
 * # Safety
 * `engine` is a live handle.
 */
enum FreetlStatus freetl_engine_set_max_len(struct FreetlEngine *engine, size_t max_len);

/**
 * Set the seed of the randomized checks.
 *
 * # Safety
 * `engine` is a live handle.
 */
enum FreetlStatus freetl_engine_set_seed(struct FreetlEngine *engine, uint64_t seed);

/**
 * Dimension table of every word up to max_len, as JSON.
 *
 * # Safety
 * `engine` is a live handle; `out` points to writable storage.
 */
enum FreetlStatus freetl_dims(const struct FreetlEngine *engine, char **out);

/**
 * Gram report of a word (`"+-+-"`; the empty string is the empty word).
 *
 * # Safety
 * `engine` is a live handle; `word` is a NUL-terminated string; `out`
 * points to writable storage.
 */
enum FreetlStatus freetl_gram(const struct FreetlEngine *engine, const char *word, char **out);

/**
 * Jones-Wenzl projection on `n` alternating points starting with `sign`
 * (`'+'` or `'-'`).
 *
 * # Safety
 * `engine` is a live handle; `out` points to writable storage.
 */
enum FreetlStatus freetl_jw(const struct FreetlEngine *engine, size_t n, char sign, char **out);

/**
 * Minimality report of `f_vv` for a nonempty word. Needs a numeric delta.
 *
 * # Safety
 * `engine` is a live handle; `word` is a NUL-terminated string; `out`
 * points to writable storage.
 */
enum FreetlStatus freetl_minimal(const struct FreetlEngine *engine, const char *word, char **out);

/**
 * Run every verification suite. Returns `CheckFailed` with the report in
 * `out` when a check fails.
 *
 * # Safety
 * `engine` is a live handle; `out` points to writable storage.
 */
enum FreetlStatus freetl_verify(const struct FreetlEngine *engine, char **out);

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *freetl_last_error(void);

/**
 * Engine version as a static string.
 */
const char *freetl_version(void);

/**
 * Release a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` is NULL or a string produced by this library and not yet freed.
 */
void freetl_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FREETL_H */
