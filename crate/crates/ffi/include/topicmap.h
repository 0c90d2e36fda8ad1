/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef TOPICMAP_H
#define TOPICMAP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Relation between two terms, as reported by [`tm_detect_relation`].
 */
typedef enum TmRelation {
  TM_RELATION_NONE = 0,
  TM_RELATION_SPELLING = 1,
  TM_RELATION_SYNONYMY = 2,
  TM_RELATION_MODIFIER_EXPANSION = 3,
  TM_RELATION_HEAD_EXPANSION = 4,
  TM_RELATION_MODIFIER_SUBSTITUTION = 5,
  TM_RELATION_HEAD_SUBSTITUTION = 6,
} TmRelation;

/**
 * Result code of every call.
 */
typedef enum TmStatus {
  TM_STATUS_OK = 0,
  TM_STATUS_NULL_POINTER = 1,
  TM_STATUS_INVALID_UTF8 = 2,
  TM_STATUS_PARSE = 3,
  TM_STATUS_CONFIG = 4,
  TM_STATUS_IO = 5,
  TM_STATUS_INVALID_ARGUMENT = 6,
  TM_STATUS_PIPELINE = 7,
  TM_STATUS_PANIC = 99,
} TmStatus;

/**
 * Clusters and the links between them.
 */
typedef struct TmClusterGraph TmClusterGraph;

/**
 * Parsed bibliographic records.
 */
typedef struct TmCorpus TmCorpus;

/**
 * Terms linked by variation relations.
 */
typedef struct TmTermGraph TmTermGraph;

/**
 * Indexed terms of a corpus.
 */
typedef struct TmTermIndex TmTermIndex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next call on the same thread.
 */
const char *tm_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *tm_version(void);

/**
 * Release a string returned by this library. Null is ignored.
 */
void tm_string_free(char *s);

/**
 * Parse ISI tagged-field text.
 */
enum TmStatus tm_corpus_from_isi(const char *text, struct TmCorpus **out);

/**
 * Parse JSON Lines records.
 */
enum TmStatus tm_corpus_from_jsonl(const char *text, struct TmCorpus **out);

/**
 * Number of records kept and skipped during parsing.
 */
enum TmStatus tm_corpus_counts(const struct TmCorpus *corpus, size_t *records, size_t *skipped);

void tm_corpus_free(struct TmCorpus *corpus);

/**
 * Extract terms with the bundled lexicons. `max_term_len` and
 * `min_doc_freq` must be at least 1.
 */
enum TmStatus tm_extract(const struct TmCorpus *corpus,
                         size_t max_term_len,
                         size_t min_doc_freq,
                         struct TmTermIndex **out);

enum TmStatus tm_term_index_len(const struct TmTermIndex *index, size_t *len);

void tm_term_index_free(struct TmTermIndex *index);

/**
 * Detect all relation kinds with the bundled synonym sets.
 */
enum TmStatus tm_build_graph(const struct TmTermIndex *index, struct TmTermGraph **out);

enum TmStatus tm_term_graph_counts(const struct TmTermGraph *graph, size_t *terms, size_t *edges);

void tm_term_graph_free(struct TmTermGraph *graph);

/**
 * Cluster with default weights. A negative `merge_threshold` keeps the
 * default threshold.
 */
enum TmStatus tm_cluster(const struct TmTermGraph *graph,
                         double merge_threshold,
                         struct TmClusterGraph **out);

enum TmStatus tm_cluster_graph_len(const struct TmClusterGraph *graph, size_t *len);

/**
 * Label and size of the cluster at `position` (label order).
 */
enum TmStatus tm_cluster_graph_get(const struct TmClusterGraph *graph,
                                   size_t position,
                                   char **label,
                                   size_t *size);

void tm_cluster_graph_free(struct TmClusterGraph *graph);

/**
 * Pajek `.net`, `.clu` and `.vec` texts. `component_partition` selects
 * connected components instead of singletons for `.clu`.
 */
enum TmStatus tm_write_pajek(const struct TmClusterGraph *graph,
                             bool component_partition,
                             char **net,
                             char **clu,
                             char **vec);

enum TmStatus tm_write_graphml(const struct TmClusterGraph *graph, char **out);

/**
 * Relation between two normalized terms (lowercase, space separated),
 * using the bundled synonym sets.
 */
enum TmStatus tm_detect_relation(const char *a, const char *b, enum TmRelation *out);

/**
 * Run the whole pipeline for a config file. A null `out_dir` uses the
 * directory named in the config.
 */
enum TmStatus tm_run_pipeline(const char *config_path, const char *out_dir);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOPICMAP_H */
