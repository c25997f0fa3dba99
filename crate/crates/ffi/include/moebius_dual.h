#ifndef MOEBIUS_DUAL_H
#define MOEBIUS_DUAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum MdStatus {
  MD_STATUS_OK = 0,
  MD_STATUS_NULL_POINTER = 1,
  MD_STATUS_INVALID_ARGUMENT = 2,
  MD_STATUS_PARSE = 3,
  MD_STATUS_SIZE_OVERFLOW = 4,
  MD_STATUS_VERIFICATION = 5,
  MD_STATUS_INCOMPATIBLE = 6,
  MD_STATUS_INTERNAL = 7,
} MdStatus;

typedef enum MdVariant {
  MD_VARIANT_ZETA = 0,
  MD_VARIANT_ZETA_TRANSPOSE = 1,
  MD_VARIANT_MOEBIUS = 2,
  MD_VARIANT_MOEBIUS_TRANSPOSE = 3,
} MdVariant;

typedef enum MdModel {
  MD_MODEL_WRIGHT_FISHER = 0,
  MD_MODEL_MORAN = 1,
} MdModel;

/*
 A dense matrix of exact rationals.
 */
typedef struct MdMatrix MdMatrix;

/*
 A finite poset together with its zeta and Möbius matrices.
 */
typedef struct MdPoset MdPoset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or null. Valid until the
 next `md_*` call on the same thread.
 */
const char *md_last_error_message(void);

void md_string_free(char *s);

/*
 Subset lattice of `{1..n}`.
 */
enum MdStatus md_poset_subsets(size_t n, struct MdPoset **poset);

/*
 Partition lattice of `{1..n}` ordered by refinement.
 */
enum MdStatus md_poset_partitions(size_t n, struct MdPoset **poset);

/*
 The chain `0 < 1 < … < n-1`.
 */
enum MdStatus md_poset_chain(size_t n, struct MdPoset **poset);

void md_poset_free(struct MdPoset *poset);

/*
 Number of elements; 0 for a null handle.
 */
size_t md_poset_len(const struct MdPoset *poset);

enum MdStatus md_poset_label(const struct MdPoset *poset, size_t index, char **label);

/*
 Möbius function `μ(a, b)`; 0 when `a` and `b` are not comparable.
 */
enum MdStatus md_poset_mu(const struct MdPoset *poset, size_t a, size_t b, int64_t *mu);

enum MdStatus md_poset_zeta(const struct MdPoset *poset, struct MdMatrix **matrix);

enum MdStatus md_poset_moebius(const struct MdPoset *poset, struct MdMatrix **matrix);

/*
 Parses a matrix from its JSON form (`"entries"` as `"p/q"` strings).
 */
enum MdStatus md_matrix_from_json(const char *json, struct MdMatrix **matrix);

enum MdStatus md_matrix_to_json(const struct MdMatrix *matrix, char **json);

size_t md_matrix_rows(const struct MdMatrix *matrix);

size_t md_matrix_cols(const struct MdMatrix *matrix);

/*
 Entry `(i, j)` as a `"p/q"` string.
 */
enum MdStatus md_matrix_entry(const struct MdMatrix *matrix, size_t i, size_t j, char **entry);

void md_matrix_free(struct MdMatrix *matrix);

/*
 Dual kernel `Q` with `Q' = H⁻¹ P H` for the chosen `H`.
 */
enum MdStatus md_dual(const struct MdPoset *poset,
                      const struct MdMatrix *kernel,
                      enum MdVariant v,
                      struct MdMatrix **dual);

/*
 Positivity certificate of `kernel` as JSON, the same document the
 `duality` command prints.
 */
enum MdStatus md_certificate_json(const struct MdPoset *poset,
                                  const struct MdMatrix *kernel,
                                  enum MdVariant v,
                                  char **json);

/*
 Builds the exact Cannings kernels for `n` individuals and `types` types
 and runs every check; `passed` receives the verdict and `json`, if not
 null, the full report.
 */
enum MdStatus md_cannings_verify(enum MdModel model,
                                 size_t n,
                                 size_t types,
                                 bool *passed,
                                 char **json);

/*
 Runs the verification suite; see the `verify-all` command.
 */
enum MdStatus md_verify_all(size_t max_n, size_t reps, uint64_t seed, bool *passed, char **json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOEBIUS_DUAL_H */
