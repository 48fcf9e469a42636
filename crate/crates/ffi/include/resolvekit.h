#ifndef RESOLVEKIT_H
#define RESOLVEKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum RkStatus {
  RK_STATUS_OK = 0,
  RK_STATUS_NULL_POINTER = 1,
  RK_STATUS_MALFORMED_INPUT = 2,
  RK_STATUS_INVALID_PARAMS = 3,
  RK_STATUS_DOMAIN = 4,
  RK_STATUS_INFEASIBLE = 5,
  RK_STATUS_NO_RESOLVING_SET = 6,
  RK_STATUS_SIZE_CAP = 7,
  RK_STATUS_BUFFER_TOO_SMALL = 8,
  RK_STATUS_INTERNAL = 9,
} RkStatus;

typedef enum RkTarget {
  RK_TARGET_ADJACENCY = 0,
  RK_TARGET_MODIFIED_ADJACENCY = 1,
  RK_TARGET_DISTANCE = 2,
} RkTarget;

/**
 * A simple undirected graph.
 */
typedef struct RkGraph RkGraph;

/**
 * Block model parameters.
 */
typedef struct RkParams RkParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next
 * call into the library from the same thread.
 */
const char *rk_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *rk_version(void);

/**
 * Builds parameters from `c` community sizes and a row-major `c × c`
 * probability matrix.
 *
 * # Safety
 * `sizes` must point to `c` values and `p` to `c * c` values.
 */
enum RkStatus rk_params_new(const size_t *sizes, size_t c, const double *p, struct RkParams **out);

/**
 * Parameters of a bundled preset such as `"karate"`.
 *
 * # Safety
 * `key` must be a NUL-terminated string.
 */
enum RkStatus rk_params_preset(const char *key, struct RkParams **out);

/**
 * Parameters from a JSON document with `community_sizes` and `P`.
 *
 * # Safety
 * `json` must be a NUL-terminated UTF-8 string.
 */
enum RkStatus rk_params_from_json(const char *json, struct RkParams **out);

/**
 * Copy of `params` with community sizes rescaled to total `n_target`.
 *
 * # Safety
 * `params` must be a live handle.
 */
enum RkStatus rk_params_scale(const struct RkParams *params,
                              size_t n_target,
                              struct RkParams **out);

/**
 * Number of communities, or 0 for a null handle.
 *
 * # Safety
 * `params` must be null or a live handle.
 */
size_t rk_params_communities(const struct RkParams *params);

/**
 * Total vertex count, or 0 for a null handle.
 *
 * # Safety
 * `params` must be null or a live handle.
 */
size_t rk_params_vertices(const struct RkParams *params);

/**
 * # Safety
 * `params` must be null or a handle not yet freed.
 */
void rk_params_free(struct RkParams *params);

/**
 * Smallest per-community allocation whose collision bound is at most
 * `alpha`. Writes one count per community to `allocation`.
 *
 * # Safety
 * `allocation` must hold `rk_params_communities(params)` values; `f_value`
 * may be null.
 */
enum RkStatus rk_mine(const struct RkParams *params,
                      double alpha,
                      uint32_t *allocation,
                      double *f_value);

/**
 * Samples a graph with contiguous community labels.
 *
 * # Safety
 * `params` must be a live handle.
 */
enum RkStatus rk_sample(const struct RkParams *params, uint64_t seed, struct RkGraph **out);

/**
 * Graph on `n` vertices from `m` edges stored as `u0 v0 u1 v1 …`.
 * Self-loops and repeated edges are dropped.
 *
 * # Safety
 * `edges` must point to `2 * m` values.
 */
enum RkStatus rk_graph_from_edges(size_t n, const uint32_t *edges, size_t m, struct RkGraph **out);

/**
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t rk_graph_vertices(const struct RkGraph *graph);

/**
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t rk_graph_edges(const struct RkGraph *graph);

/**
 * # Safety
 * `graph` must be null or a handle not yet freed.
 */
void rk_graph_free(struct RkGraph *graph);

/**
 * Whether the `len` vertices in `set` resolve the chosen matrix.
 *
 * # Safety
 * `set` must point to `len` values and `graph` must be a live handle.
 */
enum RkStatus rk_is_resolving(const struct RkGraph *graph,
                              enum RkTarget target,
                              const uint32_t *set,
                              size_t len,
                              bool *out);

/**
 * Entropy-greedy resolving set. `out_len` always receives the set size;
 * when it exceeds `capacity` the call fails with `BufferTooSmall`.
 *
 * # Safety
 * `out` must hold `capacity` values and `graph` must be a live handle.
 */
enum RkStatus rk_ich(const struct RkGraph *graph,
                     enum RkTarget target,
                     uint32_t *out,
                     size_t capacity,
                     size_t *out_len);

/**
 * Random vertices, drawn without replacement, until A* is resolved.
 *
 * # Safety
 * `out` must hold `capacity` values and `graph` must be a live handle.
 */
enum RkStatus rk_random_baseline(const struct RkGraph *graph,
                                 uint64_t seed,
                                 uint32_t *out,
                                 size_t capacity,
                                 size_t *out_len);

/**
 * Resolving-set size bound for G(n, p).
 *
 * # Safety
 * `out` must be writable.
 */
enum RkStatus rk_er_beta_upper(uint64_t n, double p, uint64_t *out);

/**
 * Size at which any vertex set resolves G(n, p) with high probability.
 *
 * # Safety
 * `out` must be writable.
 */
enum RkStatus rk_er_any_set_size(uint64_t n, double p, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RESOLVEKIT_H */
