#ifndef DIGRAPH_PFD_H
#define DIGRAPH_PFD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `DPFD_STATUS_OK` is zero.
 */
typedef enum DpfdStatus {
  DPFD_STATUS_OK = 0,
  DPFD_STATUS_NULL_POINTER = 1,
  DPFD_STATUS_INVALID_ARGUMENT = 2,
  DPFD_STATUS_PARSE_ERROR = 3,
  DPFD_STATUS_NOT_CONNECTED = 4,
  DPFD_STATUS_NOT_THIN = 5,
  DPFD_STATUS_SIZE_LIMIT_EXCEEDED = 6,
  DPFD_STATUS_TIME_BUDGET_EXCEEDED = 7,
  DPFD_STATUS_BUFFER_TOO_SMALL = 8,
  DPFD_STATUS_INTERNAL = 9,
  DPFD_STATUS_PANIC = 10,
} DpfdStatus;

typedef struct DpfdFactorization DpfdFactorization;

typedef struct DpfdGraph DpfdGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *dpfd_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void dpfd_string_free(char *s);

/**
 * Builds a digraph on `n` vertices from `arc_count` pairs stored flat in
 * `arcs` as `u0, v0, u1, v1, ...`.
 *
 * # Safety
 * `arcs` must point to `2 * arc_count` readable values (or be null when
 * `arc_count` is zero); `out` must be writable.
 */
enum DpfdStatus dpfd_graph_new(size_t n,
                               const size_t *arcs,
                               size_t arc_count,
                               struct DpfdGraph **out);

/**
 * Parses the edge-list text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum DpfdStatus dpfd_graph_parse(const char *text, struct DpfdGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void dpfd_graph_free(struct DpfdGraph *g);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t dpfd_graph_vertex_count(const struct DpfdGraph *g);

/**
 * Arc count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t dpfd_graph_arc_count(const struct DpfdGraph *g);

/**
 * Copies the arcs, sorted, as flat pairs into `buf`, which must hold
 * `2 * dpfd_graph_arc_count(g)` values.
 *
 * # Safety
 * `g` must be a live handle and `buf` writable for `capacity` values.
 */
enum DpfdStatus dpfd_graph_arcs(const struct DpfdGraph *g, size_t *buf, size_t capacity);

/**
 * Edge-list text of `g`; release with [`dpfd_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum DpfdStatus dpfd_graph_to_edge_list(const struct DpfdGraph *g, char **out);

/**
 * Strong product of `count` graphs; vertex ids are row-major over the
 * factor coordinates, first factor most significant.
 *
 * # Safety
 * `graphs` must point to `count` live handles; `out` must be writable.
 */
enum DpfdStatus dpfd_strong_product(const struct DpfdGraph *const *graphs,
                                    size_t count,
                                    struct DpfdGraph **out);

/**
 * Cartesian product, same vertex numbering as [`dpfd_strong_product`].
 *
 * # Safety
 * `graphs` must point to `count` live handles; `out` must be writable.
 */
enum DpfdStatus dpfd_cartesian_product(const struct DpfdGraph *const *graphs,
                                       size_t count,
                                       struct DpfdGraph **out);

/**
 * Cartesian skeleton of a connected thin digraph.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum DpfdStatus dpfd_cartesian_skeleton(const struct DpfdGraph *g, struct DpfdGraph **out);

/**
 * Quotient by the `S` relation. When `mult` is non-null it receives the
 * class sizes and must hold `dpfd_graph_vertex_count(g)` values.
 *
 * # Safety
 * `g` must be a live handle; `mult` null or writable for `capacity`
 * values; `out` writable.
 */
enum DpfdStatus dpfd_quotient(const struct DpfdGraph *g,
                              size_t *mult,
                              size_t capacity,
                              struct DpfdGraph **out);

/**
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum DpfdStatus dpfd_is_isomorphic(const struct DpfdGraph *a, const struct DpfdGraph *b, bool *out);

/**
 * Prime factors with respect to the strong product.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum DpfdStatus dpfd_strong_pfd(const struct DpfdGraph *g, struct DpfdFactorization **out);

/**
 * Prime factors with respect to the Cartesian product.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum DpfdStatus dpfd_cartesian_pfd(const struct DpfdGraph *g, struct DpfdFactorization **out);

/**
 * # Safety
 * `f` must be null or a handle from this library not yet freed.
 */
void dpfd_factorization_free(struct DpfdFactorization *f);

/**
 * Number of factors, or 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t dpfd_factorization_factor_count(const struct DpfdFactorization *f);

/**
 * A new graph handle holding a copy of factor `index`.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum DpfdStatus dpfd_factorization_factor(const struct DpfdFactorization *f,
                                          size_t index,
                                          struct DpfdGraph **out);

/**
 * Copies the coordinates of `vertex`, one per factor, into `buf`.
 *
 * # Safety
 * `f` must be a live handle and `buf` writable for `capacity` values.
 */
enum DpfdStatus dpfd_factorization_coords(const struct DpfdFactorization *f,
                                          size_t vertex,
                                          size_t *buf,
                                          size_t capacity);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIGRAPH_PFD_H */
