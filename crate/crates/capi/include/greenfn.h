#ifndef GREENFN_H
#define GREENFN_H

/* Generated by cbindgen from the greenfn-capi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define GREENFN_OK 0

#define GREENFN_VALIDATION_ERROR 1

#define GREENFN_USAGE_ERROR 2

#define GREENFN_DATA_ERROR 3

#define GREENFN_PANIC 4

/**
 * Opaque engine state: lazily computed tables plus the last error message.
 */
typedef struct GreenfnEngine GreenfnEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create an engine. `data_dir` may be NULL to use the embedded data files.
 *
 * # Safety
 * `data_dir`, when non-NULL, must point to a NUL-terminated string that
 * stays valid for the duration of this call.
 */
struct GreenfnEngine *greenfn_engine_new(const char *data_dir);

/**
 * # Safety
 * `engine` must be a pointer from `greenfn_engine_new`, not yet freed.
 */
void greenfn_engine_free(struct GreenfnEngine *engine);

/**
 * The message of the last failing call, or NULL. Owned by the engine; do
 * not free, and do not use after the next engine call.
 *
 * # Safety
 * `engine` must be a valid engine pointer.
 */
const char *greenfn_last_error(const struct GreenfnEngine *engine);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned in an out-parameter of this
 * library, not yet freed.
 */
void greenfn_string_free(char *s);

/**
 * Emit a generalized Green function table.
 * `group`: "spin8", "sl2" or "levi124"; `twisted`: 0 split, 1 twisted;
 * `format`: 0 ascii, 1 csv, 2 json.
 *
 * # Safety
 * `engine` must be valid; `group` must be NUL-terminated; `out`, when
 * non-NULL, must point to writable storage for one pointer.
 */
int32_t greenfn_green_table(struct GreenfnEngine *engine,
                            const char *group,
                            int32_t twisted,
                            int32_t format,
                            char **out);

/**
 * Emit a 2-parameter Green function table for the Levi on nodes {1,2,4}.
 * `resolve`: 0 keeps a22 symbolic (the published shape), 1 substitutes the
 * resolved signs; `residue`: 0 for both classes, or 1 / 3 with resolve = 1.
 *
 * # Safety
 * `engine` must be valid; `out`, when non-NULL, must point to writable
 * storage for one pointer.
 */
int32_t greenfn_twoparam_table(struct GreenfnEngine *engine,
                               int32_t twisted,
                               int32_t resolve,
                               int32_t residue,
                               int32_t format,
                               char **out);

/**
 * Run a verification suite: "orthogonality", "self-induction", "counts" or
 * "signs". The report text is returned even on validation failure.
 *
 * # Safety
 * `engine` must be valid; `what` must be NUL-terminated; `out`, when
 * non-NULL, must point to writable storage for one pointer.
 */
int32_t greenfn_verify(struct GreenfnEngine *engine, const char *what, char **out);

/**
 * The resolved sign assignment as a short text line.
 *
 * # Safety
 * `engine` must be valid; `out` must point to writable storage for one
 * pointer.
 */
int32_t greenfn_resolved_signs(struct GreenfnEngine *engine, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GREENFN_H */
