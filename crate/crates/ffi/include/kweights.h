#ifndef KWEIGHTS_H
#define KWEIGHTS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KwClassKind {
  KW_CLASS_KIND_EXACT = 0,
  KW_CLASS_KIND_PARTIAL = 1,
  KW_CLASS_KIND_UNCLASSIFIED = 2,
} KwClassKind;

typedef enum KwPlexResult {
  KW_PLEX_RESULT_FOUND = 0,
  KW_PLEX_RESULT_EXHAUSTED = 1,
  KW_PLEX_RESULT_BUDGET_EXCEEDED = 2,
} KwPlexResult;

typedef enum KwStatus {
  KW_STATUS_OK = 0,
  KW_STATUS_NULL_POINTER = 1,
  /*
   Malformed square, weight, group spec or text.
   */
  KW_STATUS_INVALID_INPUT = 2,
  /*
   Argument outside the supported range (anchor, k, order cap).
   */
  KW_STATUS_OUT_OF_RANGE = 3,
  KW_STATUS_OVERFLOW = 4,
  /*
   A Rust panic was caught at the boundary.
   */
  KW_STATUS_INTERNAL = 5,
} KwStatus;

/*
 Opaque latin square handle.
 */
typedef struct KwSquare KwSquare;

/*
 Opaque integer weight matrix handle.
 */
typedef struct KwWeight KwWeight;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failure on this thread, or NULL. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *kw_last_error(void);

/*
 Releases a string returned by this library.

 # Safety
 `s` must come from this library and not have been freed already.
 */
void kw_string_free(char *s);

/*
 Builds a square from `n * n` row-major symbols in `0..n`.

 # Safety
 `symbols` must point to `n * n` readable values; `out_square` must be writable.
 */
enum KwStatus kw_square_from_flat(size_t n, const int64_t *symbols, struct KwSquare **out_square);

/*
 Parses the whitespace-separated text format (`#` comments allowed).

 # Safety
 `source` must be a NUL-terminated string; `out_square` must be writable.
 */
enum KwStatus kw_square_parse(const char *source, struct KwSquare **out_square);

/*
 Cayley table of a group given as `cyclic:N` or `sum:M1,M2,...`.

 # Safety
 `spec` must be a NUL-terminated string; `out_square` must be writable.
 */
enum KwStatus kw_square_group(const char *spec, struct KwSquare **out_square);

/*
 # Safety
 `square` must be NULL or a live handle from this library.
 */
void kw_square_free(struct KwSquare *square);

/*
 Order of the square, or 0 for NULL.

 # Safety
 `square` must be NULL or a live handle.
 */
size_t kw_square_order(const struct KwSquare *square);

/*
 # Safety
 `square` must be a live handle; `out_symbol` must be writable.
 */
enum KwStatus kw_square_get(const struct KwSquare *square,
                            size_t row,
                            size_t col,
                            size_t *out_symbol);

/*
 Renders the square in the text format; free the result with `kw_string_free`.

 # Safety
 `square` must be a live handle; `out_text` must be writable.
 */
enum KwStatus kw_square_to_string(const struct KwSquare *square, char **out_text);

/*
 Builds a weight from `n * n` row-major entries.

 # Safety
 `entries` must point to `n * n` readable values; `out_weight` must be writable.
 */
enum KwStatus kw_weight_from_flat(size_t n, const int64_t *entries, struct KwWeight **out_weight);

/*
 Parses a weight in the text format.

 # Safety
 `source` must be a NUL-terminated string; `out_weight` must be writable.
 */
enum KwStatus kw_weight_parse(const char *source, struct KwWeight **out_weight);

/*
 Constructs the anchored 1-weight (odd order), the anchored 2-weight, or
 the uniform n-weight, chosen by `k`.

 # Safety
 `square` must be a live handle; `out_weight` must be writable.
 */
enum KwStatus kw_weight_construct(const struct KwSquare *square,
                                  int64_t k,
                                  size_t anchor_row,
                                  size_t anchor_col,
                                  struct KwWeight **out_weight);

/*
 # Safety
 `weight` must be NULL or a live handle from this library.
 */
void kw_weight_free(struct KwWeight *weight);

/*
 Order of the weight matrix, or 0 for NULL.

 # Safety
 `weight` must be NULL or a live handle.
 */
size_t kw_weight_order(const struct KwWeight *weight);

/*
 # Safety
 `weight` must be a live handle; `out_value` must be writable.
 */
enum KwStatus kw_weight_get(const struct KwWeight *weight,
                            size_t row,
                            size_t col,
                            int64_t *out_value);

/*
 Classifies `weight` as an exact, partial or unclassified k-weight of
 `square`. `out_length` receives the partial length (the order for exact
 weights, 0 when unclassified).

 # Safety
 Handles must be live; out-pointers must be writable.
 */
enum KwStatus kw_classify(const struct KwSquare *square,
                          const struct KwWeight *weight,
                          int64_t k,
                          enum KwClassKind *out_kind,
                          size_t *out_length);

/*
 Decides whether `square` has a k-weight. On success `out_feasible` is 1
 or 0; when feasible and `out_witness` is non-NULL a witness handle is
 stored there (otherwise it is set to NULL).

 # Safety
 `square` must be live; `out_feasible` must be writable; `out_witness`
 may be NULL.
 */
enum KwStatus kw_decide(const struct KwSquare *square,
                        int64_t k,
                        int32_t *out_feasible,
                        struct KwWeight **out_witness);

/*
 # Safety
 `square` must be live; `out_count` must be writable.
 */
enum KwStatus kw_count_transversals(const struct KwSquare *square, uint64_t *out_count);

/*
 Counts near transversals; with `maximal_only` non-zero, only those whose
 missing cell does not carry the missing symbol.

 # Safety
 `square` must be live; `out_count` must be writable.
 */
enum KwStatus kw_count_near_transversals(const struct KwSquare *square,
                                         int32_t maximal_only,
                                         uint64_t *out_count);

/*
 Searches for a k-plex within `max_nodes` search nodes (0 for the default
 budget). When found and `out_plex` is non-NULL, the 0/1 selection is
 stored there as a weight handle.

 # Safety
 `square` must be live; `out_result` must be writable; `out_plex` may be NULL.
 */
enum KwStatus kw_find_k_plex(const struct KwSquare *square,
                             int64_t k,
                             uint64_t max_nodes,
                             enum KwPlexResult *out_result,
                             struct KwWeight **out_plex);

/*
 Checks the transversal / maximal near transversal dichotomy for a group;
 `out_holds` receives 1 when it holds.

 # Safety
 `spec` must be a NUL-terminated string; `out_holds` must be writable.
 */
enum KwStatus kw_verify_dichotomy(const char *spec, int32_t *out_holds);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KWEIGHTS_H */
