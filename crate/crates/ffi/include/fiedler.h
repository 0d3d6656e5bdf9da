#ifndef FIEDLER_H
#define FIEDLER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FiedlerStatus {
  FIEDLER_STATUS_OK = 0,
  FIEDLER_STATUS_NULL_POINTER = 1,
  FIEDLER_STATUS_INVALID_ARGUMENT = 2,
  FIEDLER_STATUS_PARSE = 3,
  FIEDLER_STATUS_INVALID_GRAPH = 4,
  FIEDLER_STATUS_NO_CONVERGENCE = 5,
  FIEDLER_STATUS_NO_SPLIT = 6,
  FIEDLER_STATUS_PRECONDITION = 7,
  FIEDLER_STATUS_BUDGET_EXCEEDED = 8,
  FIEDLER_STATUS_BUFFER_TOO_SMALL = 9,
  FIEDLER_STATUS_INVARIANT = 10,
  FIEDLER_STATUS_PANIC = 11,
} FiedlerStatus;

/**
 * Opaque graph handle.
 */
typedef struct FiedlerGraph FiedlerGraph;

/**
 * Result of `fiedler_sep_upper_bound`.
 */
typedef struct FiedlerSepBound {
  double bound;
  double rayleigh;
  double lambda2;
  size_t cut;
  size_t separator_size;
} FiedlerSepBound;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or NULL. Owned by the
 * library.
 */
const char *fiedler_last_error_message(void);

/**
 * Builds a graph on `n` vertices from `m` edges stored as `2m` endpoints.
 *
 * # Safety
 * `edges` must point to `2 * m` readable values (or be NULL when `m == 0`);
 * `out` must be writable.
 */
enum FiedlerStatus fiedler_graph_new(size_t n,
                                     const size_t *edges,
                                     size_t m,
                                     struct FiedlerGraph **out);

/**
 * Generates a named family, e.g. `"grid:10,10"` or `"random-planar:200,7"`.
 *
 * # Safety
 * `spec` must be a nul-terminated string; `out` must be writable.
 */
enum FiedlerStatus fiedler_graph_generate(const char *spec, struct FiedlerGraph **out);

/**
 * Parses the edge-list text format (`n m` header, then `u v` lines).
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum FiedlerStatus fiedler_graph_from_edge_list(const char *text, struct FiedlerGraph **out);

/**
 * # Safety
 * `g` must come from this library and not be freed twice. NULL is ignored.
 */
void fiedler_graph_free(struct FiedlerGraph *g);

/**
 * # Safety
 * `g` must be a live handle or NULL (returns 0).
 */
size_t fiedler_graph_vertex_count(const struct FiedlerGraph *g);

/**
 * # Safety
 * `g` must be a live handle or NULL (returns 0).
 */
size_t fiedler_graph_edge_count(const struct FiedlerGraph *g);

/**
 * Algebraic connectivity. A single vertex gives `+inf`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum FiedlerStatus fiedler_lambda2(const struct FiedlerGraph *g, double *out);

/**
 * Writes the `n` Laplacian eigenvalues in ascending order.
 *
 * # Safety
 * `g` must be a live handle; `buf` must have room for `len` values.
 */
enum FiedlerStatus fiedler_spectrum(const struct FiedlerGraph *g, double *buf, size_t len);

/**
 * Separator upper bound on `λ₂`. `strategy` is one of `exhaustive`,
 * `bfs-level`, `degeneracy-coloring`, `fiedler-sweep`; NULL means
 * `fiedler-sweep`.
 *
 * # Safety
 * `g` must be a live handle; `strategy` NULL or nul-terminated; `out`
 * writable.
 */
enum FiedlerStatus fiedler_sep_upper_bound(const struct FiedlerGraph *g,
                                           const char *strategy,
                                           struct FiedlerSepBound *out);

/**
 * Unit-modulus points `z` with `Σ w·z = 0` for weights in slot order
 * `(1,1), (1,2), (2,1), (2,2)`.
 *
 * # Safety
 * `re` and `im` must each have room for 4 values.
 */
enum FiedlerStatus fiedler_four_point_solve(uint64_t n11,
                                            uint64_t n12,
                                            uint64_t n21,
                                            uint64_t n22,
                                            double *re,
                                            double *im);

/**
 * `λ₂` of a join from the parts. Pass `+inf` for a single vertex.
 */
double fiedler_join_lambda2(double l1, size_t n1, double l2, size_t n2);

/**
 * Grad report (`∇̃₀`, `∇̃½` bounds, `ω` of depth-½ minors) as JSON.
 * `budget_nodes == 0` selects the default budget.
 *
 * # Safety
 * `g` must be a live handle; `out` writable. Free the result with
 * `fiedler_string_free`.
 */
enum FiedlerStatus fiedler_grad_report_json(const struct FiedlerGraph *g,
                                            uint64_t budget_nodes,
                                            char **out);

/**
 * Full bound report for a class such as `"genus:0"` or `"minor-free:5"`
 * as JSON. `strategy` NULL means `fiedler-sweep`.
 *
 * # Safety
 * `g` must be a live handle; strings nul-terminated; `out` writable. Free
 * the result with `fiedler_string_free`.
 */
enum FiedlerStatus fiedler_bound_report_json(const struct FiedlerGraph *g,
                                             const char *class_,
                                             const char *strategy,
                                             char **out);

/**
 * # Safety
 * `s` must come from this library or be NULL.
 */
void fiedler_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FIEDLER_H */
