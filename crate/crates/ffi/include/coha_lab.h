#ifndef COHA_LAB_H
#define COHA_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

// Result codes.
typedef enum CohaStatus {
  COHA_STATUS_OK = 0,
  COHA_STATUS_NULL_POINTER = 1,
  COHA_STATUS_INVALID_UTF8 = 2,
  COHA_STATUS_PARSE = 3,
  COHA_STATUS_INVALID_ARGUMENT = 4,
  COHA_STATUS_NOT_STABLE = 5,
  COHA_STATUS_NOT_IN_S = 6,
  COHA_STATUS_NOT_MONOMIAL = 7,
  COHA_STATUS_NOT_SYMMETRIC = 8,
  COHA_STATUS_BUFFER_TOO_SMALL = 9,
  COHA_STATUS_OVERFLOW = 10,
  COHA_STATUS_PANIC = 11,
} CohaStatus;

// A framed quiver. Create with `coha_quiver_parse`, release with
// `coha_quiver_free`.
typedef struct CohaQuiver CohaQuiver;

// Message of the last failed call on this thread; empty after a success.
// Valid until the next call into this library on the same thread.
const char *coha_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void coha_string_free(char *s);

// Parses a quiver description (`vertices`, `arrow`, `framing` lines).
//
// # Safety
// `src` must be a NUL-terminated string, `out` a valid pointer.
enum CohaStatus coha_quiver_parse(const char *src, struct CohaQuiver **out);

// # Safety
// `q` must come from `coha_quiver_parse` and not have been freed. Null is
// ignored.
void coha_quiver_free(struct CohaQuiver *q);

// # Safety
// Pointers must be valid.
enum CohaStatus coha_quiver_vertex_count(const struct CohaQuiver *q, uintptr_t *out);

// Number of trees (equivalently cells) for dimension vector `dim`, e.g. `"3"`.
//
// # Safety
// Pointers must be valid; `order` and `weights` may be null.
enum CohaStatus coha_tree_count(const struct CohaQuiver *q,
                                const char *dim,
                                const char *order_name,
                                const char *weights,
                                uintptr_t *out);

// The trees of size `dim` in increasing order, one per line as
// `tree dim=<cell dimension> partition=<multipartition>`.
//
// # Safety
// Pointers must be valid; `order` and `weights` may be null.
enum CohaStatus coha_trees(const struct CohaQuiver *q,
                           const char *dim,
                           const char *order_name,
                           const char *weights,
                           char **out);

// Coefficients of the motivic class, constant term first. On
// `BufferTooSmall` (or with `coeffs` null) `*len` holds the needed length.
//
// # Safety
// `coeffs` must have room for `cap` values or be null.
enum CohaStatus coha_motivic_class(const struct CohaQuiver *q,
                                   const char *dim,
                                   int64_t *coeffs,
                                   uintptr_t cap,
                                   uintptr_t *len);

// The multipartition of a tree such as `"f,af,baf"`.
//
// # Safety
// Pointers must be valid; `order` and `weights` may be null.
enum CohaStatus coha_tree_to_partition(const struct CohaQuiver *q,
                                       const char *tree,
                                       const char *order_name,
                                       const char *weights,
                                       char **out);

// The tree of a multipartition such as `"[2,1]"` for dimension vector `dim`.
//
// # Safety
// Pointers must be valid; `order` and `weights` may be null.
enum CohaStatus coha_partition_to_tree(const struct CohaQuiver *q,
                                       const char *partition,
                                       const char *dim,
                                       const char *order_name,
                                       const char *weights,
                                       char **out);

// The cell of a representation given in the text format of `.rep` files.
//
// # Safety
// Pointers must be valid; `order` and `weights` may be null.
enum CohaStatus coha_classify(const struct CohaQuiver *q,
                              const char *rep,
                              const char *order_name,
                              const char *weights,
                              char **out);

// Shuffle product of two elements written `d=<dims>:<poly>`; the result
// uses the same syntax.
//
// # Safety
// Pointers must be valid.
enum CohaStatus coha_shuffle(const struct CohaQuiver *q,
                             const char *left,
                             const char *right,
                             char **out);

#endif  /* COHA_LAB_H */
