#ifndef QPKIT_H
#define QPKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum QpStatus {
  QP_STATUS_OK = 0,
  QP_STATUS_NULL_POINTER = 1,
  QP_STATUS_INVALID_UTF8 = 2,
  QP_STATUS_PARSE_ERROR = 3,
  QP_STATUS_INVALID_GRAPH = 4,
  QP_STATUS_LIMIT_EXCEEDED = 5,
  QP_STATUS_INVALID_CERTIFICATE = 6,
  QP_STATUS_CONSTRUCTION_ERROR = 7,
  QP_STATUS_PANIC = 8,
} QpStatus;

typedef enum QpMode {
  QP_MODE_PURE = 0,
  QP_MODE_ACCELERATED = 1,
} QpMode;

/**
 * Opaque decomposition certificate handle.
 */
typedef struct QpCert QpCert;

/**
 * Opaque graph handle.
 */
typedef struct QpGraph QpGraph;

typedef struct QpInvariants {
  uint32_t omega;
  uint32_t alpha;
  uint32_t chi;
} QpInvariants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * Valid until the next call on the same thread.
 */
const char *qp_last_error_message(void);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must come from this library or be null.
 */
void qp_string_free(char *s);

/**
 * Parses a graph6 string.
 *
 * # Safety
 * `graph6` must be a nul-terminated string; `out` must be writable.
 */
enum QpStatus qp_graph_from_graph6(const char *graph6, struct QpGraph **out);

/**
 * Builds a graph from `edge_count` pairs stored flat in `edges`
 * (`u0, v0, u1, v1, ...`).
 *
 * # Safety
 * `edges` must point to `2 * edge_count` values (may be null when zero).
 */
enum QpStatus qp_graph_from_edges(uint32_t n,
                                  const uint32_t *edges,
                                  uintptr_t edge_count,
                                  struct QpGraph **out);

/**
 * # Safety
 * `g` must come from this library or be null.
 */
void qp_graph_free(struct QpGraph *g);

/**
 * Number of vertices; 0 for null.
 *
 * # Safety
 * `g` must be a valid handle or null.
 */
uint32_t qp_graph_order(const struct QpGraph *g);

/**
 * Number of edges; 0 for null.
 *
 * # Safety
 * `g` must be a valid handle or null.
 */
uint32_t qp_graph_size(const struct QpGraph *g);

/**
 * graph6 encoding; free with [`qp_string_free`].
 *
 * # Safety
 * `g` must be a valid handle; `out` must be writable.
 */
enum QpStatus qp_graph_to_graph6(const struct QpGraph *g, char **out);

/**
 * # Safety
 * `g` must be a valid handle; `out` must be writable.
 */
enum QpStatus qp_graph_invariants(const struct QpGraph *g, struct QpInvariants *out);

/**
 * Exact perfection test; `limit` caps the order (0 selects the default).
 *
 * # Safety
 * `g` must be a valid handle; `out` must be writable.
 */
enum QpStatus qp_graph_is_perfect(const struct QpGraph *g, uint32_t limit, bool *out);

/**
 * Decides quasiperfection. When `cert_out` is non-null it receives a
 * certificate for accepted graphs and null otherwise. `limit` caps the
 * order (0 selects the default).
 *
 * # Safety
 * `g` must be a valid handle; `out` must be writable; `cert_out` may be null.
 */
enum QpStatus qp_graph_is_quasiperfect(const struct QpGraph *g,
                                       enum QpMode mode,
                                       uint32_t limit,
                                       bool *out,
                                       struct QpCert **cert_out);

/**
 * JSON (`qpcert-v1`); free with [`qp_string_free`].
 *
 * # Safety
 * `c` must be a valid handle; `out` must be writable.
 */
enum QpStatus qp_certificate_to_json(const struct QpCert *c, char **out);

/**
 * Parses certificate JSON. Parsing does not verify; use
 * [`qp_certificate_verify`].
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum QpStatus qp_certificate_from_json(const char *json, struct QpCert **out);

/**
 * `QP_STATUS_OK` iff `c` is a valid certificate for `g`.
 *
 * # Safety
 * Both handles must be valid.
 */
enum QpStatus qp_certificate_verify(const struct QpGraph *g, const struct QpCert *c);

/**
 * # Safety
 * `c` must come from this library or be null.
 */
void qp_certificate_free(struct QpCert *c);

/**
 * Odd cycle `C_n` with a triangle attached at each 1-based position.
 *
 * # Safety
 * `positions` must point to `count` values; `out` must be writable.
 */
enum QpStatus qp_family_graph(uint32_t n,
                              const uint32_t *positions,
                              uintptr_t count,
                              struct QpGraph **out);

/**
 * `C_5` blown up by `t` plus one vertex joined to two adjacent cliques.
 *
 * # Safety
 * `out` must be writable.
 */
enum QpStatus qp_counterexample_graph(uint32_t t, struct QpGraph **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QPKIT_H */
