#ifndef P4DECOMP_H
#define P4DECOMP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call in this interface.
 */
typedef enum P4Status {
  /**
   * The call succeeded.
   */
  P4Status_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  P4Status_NullArgument = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  P4Status_InvalidUtf8 = 2,
  /**
   * The instance name was not recognized.
   */
  P4Status_BadInstance = 3,
  /**
   * The edge list did not describe a usable graph.
   */
  P4Status_BadGraph = 4,
  /**
   * The engine could not decompose the graph.
   */
  P4Status_DecomposeFailed = 5,
  /**
   * The decomposition does not check out against the graph.
   */
  P4Status_VerifyFailed = 6,
  /**
   * The graph exceeds the brute-force search limit.
   */
  P4Status_TooLarge = 7,
  /**
   * Exhaustive search proved no balanced decomposition exists.
   */
  P4Status_NoDecomposition = 8,
  /**
   * An index argument was out of bounds.
   */
  P4Status_OutOfRange = 9,
  /**
   * The engine panicked; the handle is still valid but the call did nothing.
   */
  P4Status_Panic = 10,
} P4Status;

/**
 * A set of 5-vertex paths. Opaque; produced by [`p4_decompose`] or
 * [`p4_oracle`] and released with [`p4_decomposition_free`].
 */
typedef struct P4Decomposition P4Decomposition;

/**
 * An undirected simple graph. Opaque; create with one of the
 * `p4_graph_*` constructors and release with [`p4_graph_free`].
 */
typedef struct P4Graph P4Graph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or null if
 * none has happened yet. The pointer stays valid until the next failing
 * call on the same thread.
 */
const char *p4_last_error(void);

/**
 * Static name of a status code, e.g. `"ok"` or `"too-large"`.
 */
const char *p4_status_name(enum P4Status status);

/**
 * Library version as a static string.
 */
const char *p4_version(void);

/**
 * Builds a named instance: `K9`, `K8,8`, or `CIRC(n;1,2,3,4)`.
 *
 * # Safety
 *
 * `name` must point to a NUL-terminated string and `out` must be valid
 * for a pointer write.
 */
enum P4Status p4_graph_named(const char *name, struct P4Graph **out);

/**
 * Builds a random 8-regular graph on `vertices` vertices, deterministic
 * in `seed`.
 *
 * # Safety
 *
 * `out` must be valid for a pointer write.
 */
enum P4Status p4_graph_random(uint32_t vertices, uint64_t seed, struct P4Graph **out);

/**
 * Builds a graph on `vertices` vertices from `pairs` edges given as
 * flattened endpoint pairs: `endpoints[2*i]` and `endpoints[2*i + 1]`.
 *
 * # Safety
 *
 * `endpoints` must point to `2 * pairs` readable values and `out` must be
 * valid for a pointer write.
 */
enum P4Status p4_graph_from_edges(uint32_t vertices,
                                  const uint32_t *endpoints,
                                  uintptr_t pairs,
                                  struct P4Graph **out);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 *
 * `g` must be null or a live handle from a `p4_graph_*` constructor.
 */
uintptr_t p4_graph_vertex_count(const struct P4Graph *g);

/**
 * Number of edges, or 0 for a null handle.
 *
 * # Safety
 *
 * `g` must be null or a live handle from a `p4_graph_*` constructor.
 */
uintptr_t p4_graph_edge_count(const struct P4Graph *g);

/**
 * Releases a graph handle. Null is allowed.
 *
 * # Safety
 *
 * `g` must be null or a live handle from a `p4_graph_*` constructor;
 * it must not be used afterwards.
 */
void p4_graph_free(struct P4Graph *g);

/**
 * Decomposes an 8-regular graph into edge-disjoint 4-edge paths in which
 * every vertex is an end of exactly two paths.
 *
 * # Safety
 *
 * `g` must be a live graph handle and `out` must be valid for a pointer
 * write.
 */
enum P4Status p4_decompose(const struct P4Graph *g, struct P4Decomposition **out);

/**
 * Exhaustively searches a graph of at most `limit` vertices for a balanced
 * decomposition into 4-edge paths. Finding none is reported as
 * `NoDecomposition` with `*out` left null.
 *
 * # Safety
 *
 * `g` must be a live graph handle and `out` must be valid for a pointer
 * write.
 */
enum P4Status p4_oracle(const struct P4Graph *g, uintptr_t limit, struct P4Decomposition **out);

/**
 * Number of paths, or 0 for a null handle.
 *
 * # Safety
 *
 * `d` must be null or a live decomposition handle.
 */
uintptr_t p4_decomposition_len(const struct P4Decomposition *d);

/**
 * Copies the five vertices of path `index` into `out`.
 *
 * # Safety
 *
 * `d` must be a live decomposition handle and `out` must be valid for
 * five writes.
 */
enum P4Status p4_decomposition_path(const struct P4Decomposition *d,
                                    uintptr_t index,
                                    uint32_t *out);

/**
 * Releases a decomposition handle. Null is allowed.
 *
 * # Safety
 *
 * `d` must be null or a live decomposition handle; it must not be used
 * afterwards.
 */
void p4_decomposition_free(struct P4Decomposition *d);

/**
 * Checks a decomposition against a graph: full edge cover, edge-disjoint
 * 4-edge paths, every vertex an end of exactly two. On failure the flaw
 * descriptions are joined into the error message.
 *
 * # Safety
 *
 * `g` and `d` must be live handles.
 */
enum P4Status p4_verify(const struct P4Graph *g, const struct P4Decomposition *d);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* P4DECOMP_H */
