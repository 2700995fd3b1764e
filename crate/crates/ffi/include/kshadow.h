/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef KSHADOW_H
#define KSHADOW_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KsStatus {
  KS_STATUS_OK = 0,
  KS_STATUS_NULL_POINTER = 1,
  KS_STATUS_INVALID_UTF8 = 2,
  KS_STATUS_PARSE = 3,
  KS_STATUS_VALIDATION = 4,
  KS_STATUS_HYPOTHESIS = 5,
  KS_STATUS_INTERNAL = 6,
  KS_STATUS_PANIC = 7,
  KS_STATUS_OUT_OF_RANGE = 8,
} KsStatus;

// Values accepted by the `functor` argument of [`ks_bifunctor`].
typedef enum KsFunctor {
  KS_FUNCTOR_HOM = 0,
  KS_FUNCTOR_EXT = 1,
  KS_FUNCTOR_TOR = 2,
  KS_FUNCTOR_TENSOR = 3,
} KsFunctor;

// Opaque handle to a Z/2-graded group.
typedef struct KsGraded KsGraded;

// Opaque handle to a finitely generated abelian group.
typedef struct KsGroup KsGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *ks_version(void);

// Message for the last failed call on this thread, or NULL if the last
// call succeeded. Valid until the next call on the same thread.
const char *ks_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void ks_string_free(char *s);

// Parses `Z^r + Z/n + ...` into a new group handle.
//
// # Safety
// `text` must be NUL-terminated; `out` must be writable.
enum KsStatus ks_group_parse(const char *text, struct KsGroup **out);

// Releases a group handle. NULL is ignored.
//
// # Safety
// `g` must come from this library and not have been freed.
void ks_group_free(struct KsGroup *g);

// # Safety
// `g` must be a live handle; `out` must be writable.
enum KsStatus ks_group_free_rank(const struct KsGroup *g, size_t *out);

// Number of invariant factors.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum KsStatus ks_group_torsion_count(const struct KsGroup *g, size_t *out);

// Invariant factor `index` as a decimal string.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum KsStatus ks_group_torsion_factor(const struct KsGroup *g, size_t index, char **out);

// # Safety
// `g` must be a live handle; `out` must be writable.
enum KsStatus ks_group_to_string(const struct KsGroup *g, char **out);

// Parses `[even ; odd]` into a new graded handle.
//
// # Safety
// `text` must be NUL-terminated; `out` must be writable.
enum KsStatus ks_graded_parse(const char *text, struct KsGraded **out);

// Releases a graded handle. NULL is ignored.
//
// # Safety
// `g` must come from this library and not have been freed.
void ks_graded_free(struct KsGraded *g);

// Component in degree `degree` mod 2, as a new group handle.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum KsStatus ks_graded_component(const struct KsGraded *g, int64_t degree, struct KsGroup **out);

// # Safety
// `g` must be a live handle; `out` must be writable.
enum KsStatus ks_graded_to_string(const struct KsGraded *g, char **out);

// `F(g, h)` for `functor` one of the [`KsFunctor`] values.
//
// # Safety
// `g` and `h` must be live handles; `out` must be writable.
enum KsStatus ks_bifunctor(uint32_t functor,
                           const struct KsGroup *g,
                           const struct KsGroup *h,
                           struct KsGroup **out);

// Character group `Hom(g, T)` of a finite group.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum KsStatus ks_pontryagin_dual(const struct KsGroup *g, struct KsGroup **out);

// `KK_degree(a, b)` with its Hom and Ext parts. Any out-parameter may be
// NULL to skip that result.
//
// # Safety
// `a` and `b` must be live handles; non-NULL outs must be writable.
enum KsStatus ks_kk(const struct KsGraded *a,
                    const struct KsGraded *b,
                    int64_t degree,
                    struct KsGroup **out_total,
                    struct KsGroup **out_hom,
                    struct KsGroup **out_ext);

// Runs a job file given as JSON text. Writes the results document and the
// exit code the command-line tool would use. A job that fails to load still
// returns `KS_STATUS_OK`, with the error in the document and a nonzero code.
//
// # Safety
// `json` must be NUL-terminated; outs must be writable.
enum KsStatus ks_run_job(const char *json, char **out_json, int32_t *out_exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KSHADOW_H */
