#ifndef BURNSIDE_KIT_H
#define BURNSIDE_KIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define BK_THEOREM_BURNSIDE 0

#define BK_THEOREM_GBT 1

#define BK_THEOREM_CLOSURE 2

typedef enum BkStatus {
  BK_STATUS_OK = 0,
  BK_STATUS_NULL_ARGUMENT = 1,
  BK_STATUS_INVALID_UTF8 = 2,
  /*
   Malformed document, unknown fixture, bad field descriptor, invalid algebra or module.
   */
  BK_STATUS_INVALID_INPUT = 3,
  /*
   Index or degree out of range.
   */
  BK_STATUS_OUT_OF_RANGE = 4,
  /*
   A hypothesis does not hold or the hull is not stable at the requested degree.
   */
  BK_STATUS_REFUSED = 5,
  /*
   The computation itself reported an error.
   */
  BK_STATUS_COMPUTATION_FAILED = 6,
  /*
   A panic was caught at the boundary.
   */
  BK_STATUS_INTERNAL = 7,
} BkStatus;

typedef enum BkVerdict {
  BK_VERDICT_PASS = 0,
  BK_VERDICT_FAIL = 1,
  BK_VERDICT_REFUSED = 2,
} BkVerdict;

/*
 A parsed algebra with its module family. Opaque to C.
 */
typedef struct BkProblem BkProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *bk_version(void);

/*
 Message of the last failed call on this thread, or null. Valid until the next call.
 */
const char *bk_last_error_message(void);

/*
 Parses a poset, algebra or family document. `field` may be null for the document's own field.

 # Safety
 `json` and a non-null `field` must be NUL-terminated strings; `out` must be writable.
 */
enum BkStatus bk_problem_from_json(const char *json, const char *field, struct BkProblem **out);

/*
 Loads a built-in fixture by name, with its family of simple modules.

 # Safety
 `name` and a non-null `field` must be NUL-terminated strings; `out` must be writable.
 */
enum BkStatus bk_problem_from_fixture(const char *name, const char *field, struct BkProblem **out);

/*
 Restricts a problem to the given 0-based family members, producing a new handle.

 # Safety
 `p` must be a live handle, `members` must point to `len` values, `out` must be writable.
 */
enum BkStatus bk_problem_select(const struct BkProblem *p,
                                const size_t *members,
                                size_t len,
                                struct BkProblem **out);

/*
 Releases a problem handle. Null is ignored.

 # Safety
 `p` must be null or a handle not yet freed.
 */
void bk_problem_free(struct BkProblem *p);

/*
 Dimension of the algebra.

 # Safety
 `p` must be a live handle and `out` writable.
 */
enum BkStatus bk_problem_algebra_dim(const struct BkProblem *p, size_t *out);

/*
 Number of modules in the family.

 # Safety
 `p` must be a live handle and `out` writable.
 */
enum BkStatus bk_problem_family_size(const struct BkProblem *p, size_t *out);

/*
 `dim Ext^degree(M_i, M_j)` for `degree` 1 or 2 and 0-based `i`, `j`. Ext data is computed
 on first use and cached in the handle.

 # Safety
 `p` must be a live handle and `out` writable.
 */
enum BkStatus bk_ext_dim(const struct BkProblem *p,
                         uint32_t degree,
                         size_t i,
                         size_t j,
                         size_t *out);

/*
 The truncated hull as a JSON object. `max_degree = 0` selects the default degree.

 # Safety
 `p` must be a live handle and `out` writable; free the string with `bk_string_free`.
 */
enum BkStatus bk_hull_json(const struct BkProblem *p, size_t max_degree, char **out);

/*
 Verifies a theorem (`BK_THEOREM_*`) on the problem. A violated hypothesis or an unstable
 hull is reported as verdict `Refused` with status `Ok`. `out_json` may be null; otherwise it
 receives the report object. `max_degree = 0` selects the default.

 # Safety
 `p` must be a live handle, `verdict` writable, `out_json` null or writable.
 */
enum BkStatus bk_verify(const struct BkProblem *p,
                        uint32_t theorem,
                        size_t max_degree,
                        enum BkVerdict *verdict,
                        char **out_json);

/*
 The JSON document of a built-in fixture. `field` may be null for `Q`.

 # Safety
 `name` and a non-null `field` must be NUL-terminated strings; `out` must be writable.
 */
enum BkStatus bk_fixture_json(const char *name, const char *field, char **out);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must be null or a string from this library not yet freed.
 */
void bk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BURNSIDE_KIT_H */
