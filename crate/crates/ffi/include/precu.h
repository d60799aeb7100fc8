#ifndef PRECU_H
#define PRECU_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every call.
typedef enum PrecuStatus {
  PRECU_STATUS_OK = 0,
  PRECU_STATUS_NULL_POINTER = 1,
  PRECU_STATUS_INVALID_UTF8 = 2,
  PRECU_STATUS_PARSE_ERROR = 3,
  PRECU_STATUS_VALIDATION_ERROR = 4,
  PRECU_STATUS_UNKNOWN_COMMAND = 5,
  PRECU_STATUS_MIXED_FAMILY = 6,
  PRECU_STATUS_INVALID_ELEMENT = 7,
  PRECU_STATUS_INTERNAL = 8,
} PrecuStatus;

// Three-valued answer of an order query.
typedef enum PrecuTri {
  PRECU_TRI_FALSE = 0,
  PRECU_TRI_TRUE = 1,
  PRECU_TRI_UNKNOWN = 2,
} PrecuTri;

// A parsed monoid-spec document.
typedef struct PrecuDocument PrecuDocument;

// A monoid from the catalog or from a document.
typedef struct PrecuMonoid PrecuMonoid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *precu_version(void);

// Message of the last failed call on this thread, or null. Valid until the
// next call on the same thread.
const char *precu_last_error(void);

// Parses a monoid-spec document. Parse and validation errors are joined,
// one per line, into the last error; the status is that of the first.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum PrecuStatus precu_document_parse(const char *text, struct PrecuDocument **out);

// # Safety
// `doc` must come from [`precu_document_parse`] and not be freed twice.
void precu_document_free(struct PrecuDocument *doc);

// Runs the document's `[run]` block. Writes the JSON report to `out_json`
// and the CLI exit code (0 as expected, 1 failed, 2 config, 3 unknown) to
// `out_exit`. A `budget` of 0 keeps each command's own budget.
//
// # Safety
// `doc` must be a live document; `out_json` and `out_exit` valid pointers.
enum PrecuStatus precu_document_run(const struct PrecuDocument *doc,
                                    uint64_t budget,
                                    char **out_json,
                                    int32_t *out_exit);

// A catalog family such as `rational`, `T1` or `chain 3`.
//
// # Safety
// `spec` must be a NUL-terminated string and `out` a valid pointer.
enum PrecuStatus precu_monoid_from_family(const char *spec, struct PrecuMonoid **out);

// A monoid declared in a document.
//
// # Safety
// `doc` must be a live document, `name` a NUL-terminated string and `out`
// a valid pointer.
enum PrecuStatus precu_monoid_from_document(const struct PrecuDocument *doc,
                                            const char *name,
                                            struct PrecuMonoid **out);

// # Safety
// `m` must come from a `precu_monoid_*` constructor and not be freed twice.
void precu_monoid_free(struct PrecuMonoid *m);

// `x ≤ y`.
//
// # Safety
// `m` must be a live monoid, `x` and `y` NUL-terminated strings and `out` a
// valid pointer.
enum PrecuStatus precu_leq(const struct PrecuMonoid *m,
                           const char *x,
                           const char *y,
                           uint64_t budget,
                           enum PrecuTri *out);

// `x ≪ y`.
//
// # Safety
// As for [`precu_leq`].
enum PrecuStatus precu_way_below(const struct PrecuMonoid *m,
                                 const char *x,
                                 const char *y,
                                 uint64_t budget,
                                 enum PrecuTri *out);

// `x + y`, written back in the family's syntax.
//
// # Safety
// `m` must be a live monoid, `x` and `y` NUL-terminated strings and `out` a
// valid pointer.
enum PrecuStatus precu_add(const struct PrecuMonoid *m, const char *x, const char *y, char **out);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not be freed twice.
void precu_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRECU_H */
