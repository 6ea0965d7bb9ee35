#ifndef ESSDIM_H
#define ESSDIM_H

/* Generated by cbindgen from essdim-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum EssdimStatus {
  /**
   * Success.
   */
  EssdimStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  EssdimStatus_NullPointer = 1,
  /**
   * Text input could not be parsed.
   */
  EssdimStatus_ParseError = 2,
  /**
   * A precondition on the inputs was violated.
   */
  EssdimStatus_DomainError = 3,
  /**
   * A value does not fit the requested fixed-width type or buffer.
   */
  EssdimStatus_RangeError = 4,
} EssdimStatus;

/**
 * Opaque transcendence-independence certificate.
 */
typedef struct EssdimCertificate EssdimCertificate;

/**
 * Opaque arbitrary-precision integer matrix.
 */
typedef struct EssdimMatrix EssdimMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. The pointer
 * stays valid until the next essdim call on the same thread.
 */
const char *essdim_last_error_message(void);

/**
 * Parses matrix text (rows split by `;` or newlines, entries by
 * whitespace) into a new handle.
 */
enum EssdimStatus essdim_matrix_parse(const char *text, struct EssdimMatrix **out);

/**
 * Builds a matrix from a dense row-major `i64` buffer of length
 * `rows * cols`.
 */
enum EssdimStatus essdim_matrix_from_i64(size_t rows,
                                         size_t cols,
                                         const int64_t *entries,
                                         struct EssdimMatrix **out);

void essdim_matrix_free(struct EssdimMatrix *matrix);

void essdim_string_free(char *text);

/**
 * Number of rows; zero for a null handle.
 */
size_t essdim_matrix_rows(const struct EssdimMatrix *matrix);

/**
 * Number of columns; zero for a null handle.
 */
size_t essdim_matrix_cols(const struct EssdimMatrix *matrix);

/**
 * Reads one entry, failing with `RangeError` when it does not fit `i64`.
 */
enum EssdimStatus essdim_matrix_entry_i64(const struct EssdimMatrix *matrix,
                                          size_t row,
                                          size_t col,
                                          int64_t *out);

/**
 * Renders the matrix in the text format accepted by
 * `essdim_matrix_parse`. Free with `essdim_string_free`.
 */
char *essdim_matrix_to_text(const struct EssdimMatrix *matrix);

/**
 * Rank over the rationals.
 */
enum EssdimStatus essdim_matrix_rank(const struct EssdimMatrix *matrix, size_t *out);

/**
 * Determinantal rank modulo `modulus` (absolute value at least 2).
 */
enum EssdimStatus essdim_matrix_rank_mod(const struct EssdimMatrix *matrix,
                                         int64_t modulus,
                                         size_t *out);

/**
 * Smith normal form `p * a * q = d`; writes three new matrix handles.
 */
enum EssdimStatus essdim_smith_normal_form(const struct EssdimMatrix *matrix,
                                           struct EssdimMatrix **p_out,
                                           struct EssdimMatrix **d_out,
                                           struct EssdimMatrix **q_out);

/**
 * Elementary divisors as a `1 x r` matrix handle (entries can exceed
 * `i64`, so they are returned with full precision).
 */
enum EssdimStatus essdim_elementary_divisors(const struct EssdimMatrix *matrix,
                                             struct EssdimMatrix **out);

/**
 * Essential dimension of the torus orbit functor of the exponent matrix.
 */
enum EssdimStatus essdim_ed_torus(const struct EssdimMatrix *exponents, size_t *out);

/**
 * Essential dimension of the induced action on projective space.
 */
enum EssdimStatus essdim_ed_projective(const struct EssdimMatrix *exponents, size_t *out);

/**
 * Canonical dimension of the torus action.
 */
enum EssdimStatus essdim_cd_torus(const struct EssdimMatrix *exponents, size_t *out);

/**
 * Essential dimension of rigid `degree`-forms on a `dimension`-space.
 */
enum EssdimStatus essdim_ed_forms(size_t dimension, size_t degree, size_t *out);

/**
 * Essential dimension of rigid degree-`degree` hypersurfaces.
 */
enum EssdimStatus essdim_ed_hypersurface(size_t dimension, size_t degree, size_t *out);

/**
 * Essential dimension (rank) of the finite abelian group with the given
 * cyclic moduli.
 */
enum EssdimStatus essdim_ed_abelian(const int64_t *moduli, size_t len, size_t *out);

/**
 * Minimum of `rank(I + E*U)` over all `U` with entries bounded by
 * `bound`; writes the minimum and the lexicographically smallest witness.
 */
enum EssdimStatus essdim_compression_search(const struct EssdimMatrix *exponents,
                                            size_t bound,
                                            size_t *min_rank,
                                            struct EssdimMatrix **witness);

/**
 * Builds the independence certificate for the rows of `valuations`.
 */
enum EssdimStatus essdim_independence_certificate(const struct EssdimMatrix *valuations,
                                                  struct EssdimCertificate **out);

void essdim_certificate_free(struct EssdimCertificate *cert);

/**
 * Number of independent elements the certificate witnesses.
 */
size_t essdim_certificate_rank(const struct EssdimCertificate *cert);

/**
 * The positive scale factor, failing with `RangeError` if it exceeds
 * `i64`.
 */
enum EssdimStatus essdim_certificate_lambda_i64(const struct EssdimCertificate *cert, int64_t *out);

/**
 * The multiplier matrix as a new handle.
 */
enum EssdimStatus essdim_certificate_multipliers(const struct EssdimCertificate *cert,
                                                 struct EssdimMatrix **out);

/**
 * The certified valuation rows as a new handle.
 */
enum EssdimStatus essdim_certificate_g_exponents(const struct EssdimCertificate *cert,
                                                 struct EssdimMatrix **out);

/**
 * Copies the selected row and column indices into caller buffers of
 * length `essdim_certificate_rank`.
 */
enum EssdimStatus essdim_certificate_selection(const struct EssdimCertificate *cert,
                                               size_t *rows_out,
                                               size_t *cols_out,
                                               size_t len);

/**
 * Valuation (lexicographically smallest exponent) of an expression over
 * comma-separated variable names; writes `len` coordinates.
 */
enum EssdimStatus essdim_valuation(const char *vars,
                                   const char *expr,
                                   int64_t *out_coords,
                                   size_t len);

/**
 * Initial exponent (lexicographically largest) of an expression.
 */
enum EssdimStatus essdim_initial_exponent(const char *vars,
                                          const char *expr,
                                          int64_t *out_coords,
                                          size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ESSDIM_H */
