#ifndef HOFFMAN_H
#define HOFFMAN_H

/* Generated by cbindgen from the hoffman-ffi sources. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum {
  HG_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  HG_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  HG_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed HGF or graph6 text.
   */
  HG_STATUS_PARSE = 3,
  /**
   * The edges do not describe a valid Hoffman graph.
   */
  HG_STATUS_INVALID_GRAPH = 4,
  /**
   * A sum, partition or addend condition failed.
   */
  HG_STATUS_INVALID_SUM = 5,
  /**
   * The family violates a precondition of the operation.
   */
  HG_STATUS_INVALID_FAMILY = 6,
  /**
   * The graph is too large for the operation.
   */
  HG_STATUS_TOO_LARGE = 7,
  /**
   * Two covers have different slim subgraphs.
   */
  HG_STATUS_SLIM_MISMATCH = 8,
  /**
   * A result does not fit the output type.
   */
  HG_STATUS_OVERFLOW = 9,
  /**
   * An unknown catalog name.
   */
  HG_STATUS_UNKNOWN_NAME = 10,
  /**
   * The operation needs a graph without fat vertices.
   */
  HG_STATUS_NOT_SLIM_GRAPH = 11,
  /**
   * An internal panic was caught.
   */
  HG_STATUS_PANIC = 99,
} HgStatus;

/**
 * Outcome of `hg_verify_order`.
 */
typedef enum {
  HG_VERDICT_UNIQUE_COVERS = 0,
  HG_VERDICT_INCONCLUSIVE = 1,
} HgVerdict;

/**
 * A family of Hoffman graphs.
 */
typedef struct HgFamily HgFamily;

/**
 * A Hoffman graph.
 */
typedef struct HgGraph HgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message for the last failed call on this thread, or null. Valid
 * until the next call into this library on the same thread.
 */
const char *hg_last_error(void);

/**
 * Library version as a static string.
 */
const char *hg_version(void);

/**
 * Frees a string returned by this library. Null is ignored.
 */
void hg_string_free(char *s);

/**
 * Builds a graph with slims `0..slim_count` and fats after them. `edges`
 * holds `edge_count` pairs as `2 * edge_count` vertex indices.
 */
HgStatus hg_graph_new(size_t slim_count,
                      size_t fat_count,
                      const size_t *edges,
                      size_t edge_count,
                      HgGraph **out);

/**
 * Parses HGF text.
 */
HgStatus hg_graph_from_hgf(const char *hgf, HgGraph **out);

/**
 * Parses a graph6 string into a graph without fat vertices.
 */
HgStatus hg_graph_from_graph6(const char *g6, HgGraph **out);

/**
 * Catalog graph by name: h1, h2, h3, h5 or h5p.
 */
HgStatus hg_graph_catalog(const char *name, HgGraph **out);

/**
 * Releases a graph. Null is ignored.
 */
void hg_graph_free(HgGraph *g);

/**
 * Number of slim vertices, or 0 for null.
 */
size_t hg_graph_slim_count(const HgGraph *g);

/**
 * Number of fat vertices, or 0 for null.
 */
size_t hg_graph_fat_count(const HgGraph *g);

/**
 * Writes the graph as HGF text.
 */
HgStatus hg_graph_to_hgf(const HgGraph *g, char **out);

/**
 * Writes a graph without fat vertices as graph6.
 */
HgStatus hg_graph_to_graph6(const HgGraph *g, char **out);

/**
 * Decomposes into indecomposable addends. Stores the addend count and,
 * when `part_of` is non-null, the addend index of each slim vertex into
 * `part_of[0..slim_count]`. Addends are ordered by their least slim.
 */
HgStatus hg_decompose(const HgGraph *g, size_t *addend_count, size_t *part_of);

/**
 * Replaces every h1 addend by h2.
 */
HgStatus hg_tilde(const HgGraph *g, HgGraph **out);

/**
 * Canonical certificate as lowercase hex.
 */
HgStatus hg_canonical_hex(const HgGraph *g, char **out);

/**
 * Whether two graphs are isomorphic by a map preserving slim and fat.
 */
HgStatus hg_is_isomorphic(const HgGraph *a, const HgGraph *b, bool *out);

/**
 * Order of the automorphism group.
 */
HgStatus hg_automorphism_order(const HgGraph *g, uint64_t *out);

/**
 * Order of the group of automorphisms fixing every slim vertex.
 */
HgStatus hg_slim_fixing_order(const HgGraph *g, uint64_t *out);

/**
 * Whether two covers of the same slim graph are equivalent, with slim
 * vertices identified by index.
 */
HgStatus hg_cover_equivalent(const HgGraph *a, const HgGraph *b, bool *out);

/**
 * Builds a family from comma-separated catalog names, e.g. `"h2,h5"`.
 */
HgStatus hg_family_from_names(const char *names, HgFamily **out);

/**
 * Builds a family from `count` graphs. The graphs are copied.
 */
HgStatus hg_family_from_graphs(const HgGraph *const *members, size_t count, HgFamily **out);

/**
 * Releases a family. Null is ignored.
 */
void hg_family_free(HgFamily *f);

/**
 * Number of members, or 0 for null.
 */
size_t hg_family_len(const HgFamily *f);

/**
 * Whether the family contains a graph isomorphic to `g`.
 */
HgStatus hg_family_contains(const HgFamily *f, const HgGraph *g, bool *out);

/**
 * The smallest family containing `f` that is closed under the bar
 * operation.
 */
HgStatus hg_family_closure(const HgFamily *f, HgFamily **out);

/**
 * Lower bound on N_H.
 */
HgStatus hg_lower_bound(const HgFamily *f, size_t *out);

/**
 * Runs the uniqueness certificate at one order. `x_count` and `y_count`
 * may be null.
 */
HgStatus hg_verify_order(const HgFamily *f,
                         size_t order,
                         HgVerdict *verdict,
                         size_t *x_count,
                         size_t *y_count);

/**
 * Searches for N_H up to `max_order`. `found` reports whether an order was
 * certified; `n_h` is set only then. `exact` may be null.
 */
HgStatus hg_search_nh(const HgFamily *f, size_t max_order, bool *found, size_t *n_h, bool *exact);

/**
 * Number of strict covers of `g` by members of `f`, up to equivalence.
 */
HgStatus hg_cover_count(const HgFamily *f, const HgGraph *g, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOFFMAN_H */
