#ifndef BIDIM_H
#define BIDIM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BidimStatus {
  BIDIM_STATUS_OK = 0,
  BIDIM_STATUS_NULL_ARGUMENT = 1,
  BIDIM_STATUS_INVALID_UTF8 = 2,
  BIDIM_STATUS_PARSE = 3,
  BIDIM_STATUS_INVALID = 4,
  BIDIM_STATUS_CAP_EXCEEDED = 5,
  BIDIM_STATUS_PANIC = 6,
} BidimStatus;

/**
 * A validated arrangement of polysegments.
 */
typedef struct BidimArrangement BidimArrangement;

/**
 * A graph with stable vertex and edge ids.
 */
typedef struct BidimGraph BidimGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *bidim_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void bidim_string_free(char *s);

/**
 * Parses and validates an arrangement from `{"polysegments": [...]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum BidimStatus bidim_arrangement_from_json(const char *json, struct BidimArrangement **out);

/**
 * # Safety
 * `a` must come from this library or be null.
 */
void bidim_arrangement_free(struct BidimArrangement *a);

/**
 * # Safety
 * Pointers must be valid.
 */
enum BidimStatus bidim_arrangement_len(const struct BidimArrangement *a, size_t *out);

/**
 * Largest number of crossings on one polysegment.
 *
 * # Safety
 * Pointers must be valid.
 */
enum BidimStatus bidim_arrangement_xi(const struct BidimArrangement *a, size_t *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum BidimStatus bidim_intersection_graph(const struct BidimArrangement *a,
                                          struct BidimGraph **out);

/**
 * Planarizes the arrangement and runs every bundle check; `passed` is set
 * when all hold.
 *
 * # Safety
 * Pointers must be valid.
 */
enum BidimStatus bidim_planarize_check(const struct BidimArrangement *a, bool *passed);

/**
 * Parses a graph from `{"vertices": [...], "edges": [[id, u, v], ...]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum BidimStatus bidim_graph_from_json(const char *json, struct BidimGraph **out);

/**
 * # Safety
 * `g` must come from this library or be null.
 */
void bidim_graph_free(struct BidimGraph *g);

/**
 * # Safety
 * Pointers must be valid.
 */
enum BidimStatus bidim_graph_counts(const struct BidimGraph *g, size_t *vertices, size_t *edges);

/**
 * # Safety
 * Pointers must be valid. The string is released with
 * [`bidim_string_free`].
 */
enum BidimStatus bidim_graph_to_json(const struct BidimGraph *g, char **out);

/**
 * Exact treewidth for graphs of at most `cap` vertices.
 *
 * # Safety
 * Pointers must be valid.
 */
enum BidimStatus bidim_treewidth_exact(const struct BidimGraph *g, size_t cap, size_t *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum BidimStatus bidim_treewidth_bounds(const struct BidimGraph *g, size_t *lower, size_t *upper);

/**
 * Decides whether `g` has a vertex cover of at most `k` vertices. The full
 * outcome is written as JSON to `report` when it is not null.
 *
 * # Safety
 * Pointers must be valid; `report` may be null.
 */
enum BidimStatus bidim_solve_vc(const struct BidimGraph *g,
                                size_t xi,
                                size_t k,
                                bool *yes,
                                char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIDIM_H */
