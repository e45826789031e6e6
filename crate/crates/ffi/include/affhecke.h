#ifndef AFFHECKE_H
#define AFFHECKE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define AFFHECKE_OK 0

// The call succeeded but a verification did not pass.
#define AFFHECKE_CHECK_FAILED 1

#define AFFHECKE_INVALID_ARGUMENT 2

#define AFFHECKE_PARSE_ERROR 3

#define AFFHECKE_CONFIG_ERROR 4

#define AFFHECKE_NULL_POINTER 5

// The caller's buffer is too small; the required length was written.
#define AFFHECKE_BUFFER_TOO_SMALL 6

#define AFFHECKE_PANIC 7

// Opaque group handle.
typedef struct AffheckeGroup AffheckeGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates a group from a preset name such as `GL3`, `SL2affine` or `Sp4`.
int32_t affhecke_group_new(const char *preset, struct AffheckeGroup **out);

// Creates a group from the TOML text of a root-datum description.
int32_t affhecke_group_from_toml(const char *toml, struct AffheckeGroup **out);

// Releases a group handle. Null is ignored.
void affhecke_group_free(struct AffheckeGroup *g);

// Rank of the coweight lattice.
int32_t affhecke_group_rank(const struct AffheckeGroup *g, size_t *out);

// Length of an element given in text form, e.g. `t[1,0] * s1`.
int32_t affhecke_length(const struct AffheckeGroup *g, const char *x, size_t *out);

// Canonical text form of an element.
int32_t affhecke_canonical_form(const struct AffheckeGroup *g, const char *x, char **out);

// Whether `x <= y` in the Bruhat order.
int32_t affhecke_bruhat_leq(const struct AffheckeGroup *g, const char *x, const char *y, bool *out);

// Coefficients of `P_{x,w}(q)`, constant term first. `len` receives the
// number of coefficients; if it exceeds `cap`, nothing is copied and
// `AFFHECKE_BUFFER_TOO_SMALL` is returned. `coeffs` may be null when `cap` is 0.
int32_t affhecke_kl_polynomial(const struct AffheckeGroup *g,
                               const char *x,
                               const char *w,
                               int64_t *coeffs,
                               size_t cap,
                               size_t *len);

// The mu-admissible set as a JSON array of canonical element strings.
int32_t affhecke_admissible_set_json(const struct AffheckeGroup *g, const char *mu, char **out);

// Terms of the Wakimoto function of `(u, v)` as JSON, each coefficient
// given in `v` and as a polynomial in `Q`.
int32_t affhecke_wakimoto_json(const struct AffheckeGroup *g,
                               const char *u,
                               const char *v,
                               char **out);

// Verification report for the Kottwitz function of `mu`, as JSON.
// Returns `AFFHECKE_CHECK_FAILED` (with the report written) if a check fails.
int32_t affhecke_verify_theorem1_json(const struct AffheckeGroup *g, const char *mu, char **out);

// Verification report for the Wakimoto function of `(u, v)`, as JSON.
int32_t affhecke_verify_theorem2_json(const struct AffheckeGroup *g,
                                      const char *u,
                                      const char *v,
                                      char **out);

// Releases a string returned by this library. Null is ignored.
void affhecke_string_free(char *s);

// Message for the last failure on this thread, or null. Valid until the
// next call into this library from the same thread.
const char *affhecke_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AFFHECKE_H */
