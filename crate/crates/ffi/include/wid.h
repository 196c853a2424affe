#ifndef WID_H
#define WID_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum {
  WID_STATUS_OK = 0,
  WID_STATUS_INVALID_ARGUMENT = 1,
  WID_STATUS_PARSE = 2,
  WID_STATUS_DEGREE_TOO_HIGH = 3,
  WID_STATUS_NULL_POINTER = 4,
  WID_STATUS_OVERFLOW = 5,
  WID_STATUS_FAILED = 6,
  WID_STATUS_PANIC = 7,
} WidStatus;

// An evaluation target: a Clifford pair or the traceless 2x2 matrices.
typedef struct WidPair WidPair;

// A noncommutative polynomial with rational coefficients.
typedef struct WidPoly WidPoly;

// Rank options. `seeds` may be null when `seeds_len` is zero, which selects
// the default seeds.
typedef struct {
  size_t max_degree;
  const uint64_t *seeds;
  size_t seeds_len;
  bool exact;
} WidRankOptions;

// Dimensions of a multilinear evaluation or span computation.
typedef struct {
  size_t degree;
  size_t rows;
  size_t cols;
  size_t rank;
  size_t kernel_dim;
  size_t quotient_dim;
} WidRankReport;

typedef struct {
  WidRankReport span;
  WidRankReport kernel;
  bool span_in_kernel;
  bool passed;
} WidGenerationReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or an empty string.
// The pointer stays valid until the next call on the same thread.
const char *wid_last_error(void);

// # Safety
// `s` must be null or a string returned by this library.
void wid_string_free(char *s);

// Parses an expression such as `"[x1^2,x2]"` or `"S(4)"`.
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
WidStatus wid_poly_parse(const char *text, WidPoly **out_poly);

// # Safety
// `poly` must be null or a handle from [`wid_poly_parse`].
void wid_poly_free(WidPoly *poly);

// Canonical text of `poly`; free the result with [`wid_string_free`].
//
// # Safety
// `poly` must be a live handle and `out_text` a valid pointer.
WidStatus wid_poly_format(const WidPoly *poly, char **out_text);

// Total degree of `poly`; zero for constants and the zero polynomial.
//
// # Safety
// `poly` must be a live handle and `out_degree` a valid pointer.
WidStatus wid_poly_degree(const WidPoly *poly, size_t *out_degree);

// The Clifford pair of dimension `k` with symbolic Gram values.
//
// # Safety
// `out_pair` must be a valid pointer.
WidStatus wid_pair_clifford(size_t k, WidPair **out_pair);

// The 2x2 matrices with traceless substitutions.
//
// # Safety
// `out_pair` must be a valid pointer.
WidStatus wid_pair_matrix(WidPair **out_pair);

// # Safety
// `pair` must be null or a handle from a `wid_pair_*` constructor.
void wid_pair_free(WidPair *pair);

// Decides whether `poly` is a weak identity of `pair`.
//
// # Safety
// Handles must be live and `out_holds` a valid pointer.
WidStatus wid_check(const WidPoly *poly, const WidPair *pair, bool *out_holds);

// Rank of evaluation on multilinear words of degree `n`.
//
// # Safety
// `pair` must be live, `opts` null or valid, `out_report` valid.
WidStatus wid_evaluation_kernel(size_t n,
                                const WidPair *pair,
                                const WidRankOptions *opts,
                                WidRankReport *out_report);

// Dimension of the degree-`n` multilinear consequences of `gens`.
//
// # Safety
// `gens` must point to `len` live handles.
WidStatus wid_consequence_span(size_t n,
                               const WidPoly *const *gens,
                               size_t len,
                               const WidRankOptions *opts,
                               WidRankReport *out_report);

// Compares the consequences of `[x1^2,x2]` with the Clifford kernel at
// degree `n`.
//
// # Safety
// `opts` must be null or valid, `out_report` valid.
WidStatus wid_generation_check(size_t n,
                               const WidRankOptions *opts,
                               WidGenerationReport *out_report);

// Coefficients `alpha`, `beta` of the insertion relation, as `"p/q"`
// strings to free with [`wid_string_free`].
//
// # Safety
// Out-pointers must be valid.
WidStatus wid_insertion_coeffs(size_t n, size_t k, char **out_alpha, char **out_beta);

// Number of standard tableaux of shape `parts[0] >= parts[1] >= ...`.
//
// # Safety
// `parts` must point to `len` values.
WidStatus wid_hook_dim(const size_t *parts, size_t len, uint64_t *out_dim);

// Number of involutions in the symmetric group on `n` letters.
//
// # Safety
// `out_count` must be a valid pointer.
WidStatus wid_involutions(size_t n, uint64_t *out_count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WID_H */
