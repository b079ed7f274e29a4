#ifndef DBSEQ_H
#define DBSEQ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define DBS_METHOD_GREEDY 0

#define DBS_METHOD_CYCLE_JOIN 1

#define DBS_METHOD_SHIFT_RULE 2

#define DBS_METHOD_FKM 3

#define DBS_VARIANT_PMX 0

#define DBS_VARIANT_PMN 1

#define DBS_VARIANT_RPMX 2

#define DBS_VARIANT_RPMN 3

/**
 * Used when a `max_words` argument is 0.
 */
#define DBS_DEFAULT_MAX_WORDS (1 << 22)

typedef enum DbsStatus {
  DBS_STATUS_OK = 0,
  DBS_STATUS_NULL_POINTER = 1,
  DBS_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The input word is the final word of its sequence.
   */
  DBS_STATUS_END_OF_SEQUENCE = 3,
  /**
   * More than `max_words` words would be materialized.
   */
  DBS_STATUS_RESOURCE_LIMIT = 4,
  DBS_STATUS_NOT_FOUND = 5,
  DBS_STATUS_BUFFER_TOO_SMALL = 6,
  /**
   * A Rust panic was caught at the boundary.
   */
  DBS_STATUS_INTERNAL = 7,
} DbsStatus;

/**
 * Opaque word list: a complete `(n, k)` sequence or a stream prefix.
 */
typedef struct DbsSequence DbsSequence;

/**
 * Opaque cycle-joining trace with per-cycle records.
 */
typedef struct DbsTrace DbsTrace;

/**
 * One inserted cycle. Its first word sits at `open_position`, its last at
 * `close_position`, and its anchor (if any) at `open_position - 1`.
 */
typedef struct DbsCycleInfo {
  size_t index;
  size_t open_position;
  size_t close_position;
  bool has_anchor;
} DbsCycleInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never null.
 */
const char *dbs_status_message(uint32_t status);

/**
 * Builds the complete `(n, k)` sequence of `variant` with `method`.
 * `max_words` bounds `k^n`; 0 selects [`DBS_DEFAULT_MAX_WORDS`].
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DbsStatus dbs_generate(uint32_t method,
                            uint32_t variant,
                            size_t n,
                            uint32_t k,
                            size_t max_words,
                            struct DbsSequence **out);

/**
 * The first `limit` words of the infinite `rpmx(n)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DbsStatus dbs_stream_rpmx(size_t n, size_t limit, size_t max_words, struct DbsSequence **out);

/**
 * # Safety
 * `seq` must come from this library and not be used afterwards. Null is
 * ignored.
 */
void dbs_sequence_free(struct DbsSequence *seq);

/**
 * # Safety
 * `seq` must be a live handle; `out` must be valid for writes.
 */
enum DbsStatus dbs_sequence_len(const struct DbsSequence *seq, size_t *out);

/**
 * Word length `n`.
 *
 * # Safety
 * `seq` must be a live handle; `out` must be valid for writes.
 */
enum DbsStatus dbs_sequence_n(const struct DbsSequence *seq, size_t *out);

/**
 * Copies word `index` into `out[0..n]`.
 *
 * # Safety
 * `seq` must be a live handle; `out` must hold `n` symbols.
 */
enum DbsStatus dbs_sequence_word(const struct DbsSequence *seq, size_t index, uint32_t *out);

/**
 * Copies the symbol stream (last symbol of each word) into `out`, which
 * holds `capacity` symbols; needs `capacity >= len`.
 *
 * # Safety
 * `seq` must be a live handle; `out` must hold `capacity` symbols.
 */
enum DbsStatus dbs_sequence_symbols(const struct DbsSequence *seq, uint32_t *out, size_t capacity);

/**
 * Successor in `rpmx(n, k)`; `k = 0` selects the unbounded alphabet.
 *
 * # Safety
 * `word` and `out` must each hold `n` symbols.
 */
enum DbsStatus dbs_succ(const uint32_t *word, size_t n, uint32_t k, uint32_t *out);

/**
 * Successor in `rpmn(n, k)`.
 *
 * # Safety
 * `word` and `out` must each hold `n` symbols.
 */
enum DbsStatus dbs_next(const uint32_t *word, size_t n, uint32_t k, uint32_t *out);

/**
 * Successor in `pmn(n, k)`.
 *
 * # Safety
 * `word` and `out` must each hold `n` symbols.
 */
enum DbsStatus dbs_next_inv(const uint32_t *word, size_t n, uint32_t k, uint32_t *out);

/**
 * Successor in `pmx(n, k)`.
 *
 * # Safety
 * `word` and `out` must each hold `n` symbols.
 */
enum DbsStatus dbs_pmx_successor(const uint32_t *word, size_t n, uint32_t k, uint32_t *out);

/**
 * Whether `word` is the last word of its cycle.
 *
 * # Safety
 * `word` must hold `n` symbols; `out` must be valid for writes.
 */
enum DbsStatus dbs_is_last(const uint32_t *word, size_t n, bool *out);

/**
 * The key-word of the cycle containing `word`.
 *
 * # Safety
 * `word` and `out` must each hold `n` symbols.
 */
enum DbsStatus dbs_keyword_of(const uint32_t *word, size_t n, uint32_t *out);

/**
 * Runs cycle joining for `(n, k)` with per-cycle records.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DbsStatus dbs_join_build(size_t n, uint32_t k, size_t max_words, struct DbsTrace **out);

/**
 * # Safety
 * `trace` must come from this library and not be used afterwards. Null is
 * ignored.
 */
void dbs_trace_free(struct DbsTrace *trace);

/**
 * Number of words, `k^n`.
 *
 * # Safety
 * `trace` must be a live handle; `out` must be valid for writes.
 */
enum DbsStatus dbs_trace_len(const struct DbsTrace *trace, size_t *out);

/**
 * Copies the word at `position` into `out[0..n]`.
 *
 * # Safety
 * `trace` must be a live handle; `out` must hold `n` symbols.
 */
enum DbsStatus dbs_trace_word(const struct DbsTrace *trace, size_t position, uint32_t *out);

/**
 * Position of `word` in the ordering.
 *
 * # Safety
 * `trace` must be a live handle; `word` must hold `n` symbols; `out` must
 * be valid for writes.
 */
enum DbsStatus dbs_trace_position_of(const struct DbsTrace *trace,
                                     const uint32_t *word,
                                     size_t n,
                                     size_t *out);

/**
 * # Safety
 * `trace` must be a live handle; `out` must be valid for writes.
 */
enum DbsStatus dbs_trace_cycle_count(const struct DbsTrace *trace, size_t *out);

/**
 * # Safety
 * `trace` must be a live handle; `out` must be valid for writes.
 */
enum DbsStatus dbs_trace_cycle(const struct DbsTrace *trace,
                               size_t index,
                               struct DbsCycleInfo *out);

/**
 * Copies the key-word of cycle `index` into `out[0..n]`.
 *
 * # Safety
 * `trace` must be a live handle; `out` must hold `n` symbols.
 */
enum DbsStatus dbs_trace_cycle_key(const struct DbsTrace *trace, size_t index, uint32_t *out);

/**
 * The trace's ordering as a new sequence handle.
 *
 * # Safety
 * `trace` must be a live handle; `out` must be valid for writes.
 */
enum DbsStatus dbs_trace_sequence(const struct DbsTrace *trace, struct DbsSequence **out);

/**
 * Sets `*pass` to whether `seq` is an `(n, k)` De Bruijn sequence, `n`
 * taken from the handle.
 *
 * # Safety
 * `seq` must be a live handle; `pass` must be valid for writes.
 */
enum DbsStatus dbs_check_db(const struct DbsSequence *seq, uint32_t k, bool *pass);

/**
 * Sets `*pass` to whether every structural property of the join holds.
 *
 * # Safety
 * `trace` must be a live handle; `pass` must be valid for writes.
 */
enum DbsStatus dbs_check_structure(const struct DbsTrace *trace, bool *pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DBSEQ_H */
