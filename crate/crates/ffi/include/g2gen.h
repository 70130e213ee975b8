#ifndef G2GEN_H
#define G2GEN_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

// Status codes. The nonzero values below 6 match the CLI exit codes.
typedef enum G2Status {
  G2_STATUS_OK = 0,
  // The randomized search ran out of attempts.
  G2_STATUS_FAILURE = 2,
  // The input is outside the supported class or violates a precondition.
  G2_STATUS_PRECONDITION = 3,
  // Malformed input: bad JSON, singular curve, non-prime `q`.
  G2_STATUS_INPUT = 4,
  // An internal check failed.
  G2_STATUS_INTERNAL = 5,
  // A required pointer argument was null.
  G2_STATUS_NULL_POINTER = 6,
  // The library panicked; the handle arguments should not be reused.
  G2_STATUS_PANIC = 7,
} G2Status;

// A validated curve `y^2 = f(x)` over `F_q`.
typedef struct G2Curve G2Curve;

// Four generators of `J[l]` with their verification data.
typedef struct G2GeneratorSet G2GeneratorSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last error raised on this thread, or null. The pointer is
// valid until the next failing call on the same thread.
const char *g2gen_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void g2gen_string_free(char *s);

// Builds a curve from `q` and the six little-endian coefficients of `f`.
//
// # Safety
// `f` must point to `len` readable values and `out` must be writable.
enum G2Status g2gen_curve_new(uint64_t q, const int64_t *f, size_t len, struct G2Curve **out);

// Builds a curve from `{"q": ..., "f": [...]}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` writable.
enum G2Status g2gen_curve_from_json(const char *json, struct G2Curve **out);

// # Safety
// `curve` must come from this library and not have been freed. Null is
// ignored.
void g2gen_curve_free(struct G2Curve *curve);

// Writes the group order `P(1)` of `J(F_q)`.
//
// # Safety
// `curve` must be a live handle and `order` writable.
enum G2Status g2gen_curve_order(const struct G2Curve *curve, uint64_t *order);

// The `info` report as JSON. `ell = 0` omits the data modulo `l`.
//
// # Safety
// `curve` must be a live handle and `out` writable.
enum G2Status g2gen_info_json(const struct G2Curve *curve, uint64_t ell, char **out);

// The classification of `(curve, l)` as JSON.
//
// # Safety
// `curve` must be a live handle and `out` writable.
enum G2Status g2gen_classify_json(const struct G2Curve *curve, uint64_t ell, char **out);

// Finds and verifies four generators of `J[l]`, drawing `n` fresh samples
// per search loop from an RNG seeded with `seed`.
//
// # Safety
// `curve` must be a live handle and `out` writable.
enum G2Status g2gen_generators(const struct G2Curve *curve,
                               uint64_t ell,
                               size_t n,
                               uint64_t seed,
                               struct G2GeneratorSet **out);

// # Safety
// `set` must come from this library and not have been freed. Null is
// ignored.
void g2gen_generators_free(struct G2GeneratorSet *set);

// The Pfaffian of the pairing matrix; nonzero for a basis. Returns 0 for a
// null handle.
//
// # Safety
// `set` must be a live handle or null.
uint64_t g2gen_generators_pfaffian(const struct G2GeneratorSet *set);

// Degree over `F_q` of the field the generators are written in.
//
// # Safety
// `set` must be a live handle or null.
size_t g2gen_generators_ambient_degree(const struct G2GeneratorSet *set);

// Copies the Frobenius matrix (`which = 0`) or the pairing exponent matrix
// (`which = 1`) into `out[16]`, row-major.
//
// # Safety
// `set` must be a live handle and `out` must hold 16 values.
enum G2Status g2gen_generators_matrix(const struct G2GeneratorSet *set,
                                      uint32_t which,
                                      uint64_t *out);

// The full `generators` report as JSON. `input_sha256` hashes the compact
// curve JSON rather than a file.
//
// # Safety
// `set` must be a live handle and `out` writable.
enum G2Status g2gen_generators_json(const struct G2GeneratorSet *set, uint64_t seed, char **out);

// Re-checks a `generators` report. Writes the verification JSON to `out`
// and returns `Ok` only when the points form a basis, the postconditions
// hold and the saved matrices match; otherwise `Failure`.
//
// # Safety
// `report` must be a NUL-terminated string and `out` writable.
enum G2Status g2gen_verify_json(const char *report, uint64_t seed, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* G2GEN_H */
