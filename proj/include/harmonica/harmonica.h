#ifndef HARMONICA_H
#define HARMONICA_H

/* C interface to the harmonica library. Complexes are opaque handles; every
 * result is a NUL-terminated JSON (or SVG/CSV) string owned by the caller and
 * released with hm_string_free. Functions return HM_OK or an error status;
 * the failure is then described by hm_last_error() on the calling thread. */

#include <stdint.h>

#if defined(_WIN32)
#define HM_API __declspec(dllexport)
#else
#define HM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hm_status {
  HM_OK = 0,
  HM_INVALID_ARGUMENT,
  HM_PARSE_ERROR,
  HM_IO_ERROR,
  HM_DIVISION_BY_ZERO,
  HM_DENOMINATOR_DIVISIBLE_BY_P,
  HM_DOMAIN_MISMATCH,
  HM_MALFORMED_FACET,
  HM_DIMENSION_MISMATCH,
  HM_DEGREE_OUT_OF_RANGE,
  HM_NOT_A_CYCLE,
  HM_NOT_HARMONIC_COMPLEX,
  HM_NO_DECOMPOSITION,
  HM_CAP_EXCEEDED,
  HM_NOT_A_ROW_BASIS,
  HM_NOT_A_COLUMN_BASIS,
  HM_NOT_A_SURFACE,
  HM_NON_INTEGER_DIVISION,
  HM_TORSION_OBSTRUCTION,
  HM_INTERNAL_EQUIVALENCE_VIOLATION,
  HM_INTERNAL_ERROR
} hm_status;

typedef struct hm_complex hm_complex;

HM_API const char* hm_version(void);
/* Error name such as "NotACycle"; "Ok" for HM_OK. */
HM_API const char* hm_status_name(hm_status status);
/* {"error","message","detail"} for the last failure on this thread, or "" when
 * the last call succeeded. Valid until the next call on the same thread. */
HM_API const char* hm_last_error(void);
HM_API void hm_string_free(char* s);
/* HM_OK when the field name ("q" or "f<p>" with p prime) is accepted. */
HM_API hm_status hm_field_check(const char* field);

/* Loading and serialization. Accepts simplicial-v1 and chain-complex-v1. */
HM_API hm_status hm_complex_from_json(const char* json, hm_complex** out);
HM_API hm_status hm_complex_load(const char* path, hm_complex** out);
HM_API void hm_complex_free(hm_complex* cx);
HM_API hm_status hm_complex_to_json(const hm_complex* cx, char** out);
/* {"top_degree","cells":[...],"betti":[...],"torsion_primes":[[...]...]} */
HM_API hm_status hm_complex_summary(const hm_complex* cx, char** out);
/* Checks d∘d = 0 and, for simplicial input, closure under faces. */
HM_API hm_status hm_complex_validate(const hm_complex* cx, char** out);

/* Fields are spelled "q" or "f<p>". Chains are
 * {"degree": k, "coefficients": {"<index or label>": "<scalar>"}}. */
HM_API hm_status hm_diagnose(const hm_complex* cx, const char* field, int degree, char** out);
HM_API hm_status hm_harmonic_representative(const hm_complex* cx, const char* field, const char* cycle, char** out);
HM_API hm_status hm_har_set(const hm_complex* cx, const char* field, const char* cycle, char** out);
HM_API hm_status hm_hodge_decomposition(const hm_complex* cx, const char* field, int degree, char** out);
HM_API hm_status hm_representable_subspace(const hm_complex* cx, const char* field, int degree, char** out);
HM_API hm_status hm_laplacian(const hm_complex* cx, const char* field, int degree, char** out);
HM_API hm_status hm_quotient_projection(const hm_complex* cx, const char* field, int degree, char** out);

/* A cap of 0 selects the default (HARMONICA_CAP or 10^6). */
HM_API hm_status hm_upsilon(const hm_complex* cx, int degree, uint64_t cap, char** out);
HM_API hm_status hm_cotree_census(const hm_complex* cx, int degree, uint64_t cap, char** out);
HM_API hm_status hm_surface_upsilon(const hm_complex* cx, char** out);
HM_API hm_status hm_matrix_tree_check(const hm_complex* cx, int degree, uint64_t cap, char** out);
HM_API hm_status hm_rational_projection(const hm_complex* cx, int degree, char** out);
HM_API hm_status hm_reduced_projection(const hm_complex* cx, int degree, uint64_t p, char** out);
HM_API hm_status hm_harmonic_primes(const hm_complex* cx, int degree, uint64_t bound, uint64_t cap, char** out);
/* Smallest prime up to `limit` over which the complex is homologically
 * harmonic in `degree`, with the representative of `cycle` (integer
 * coefficients) there. A NULL cycle selects a nontrivial rational cycle. The
 * result also carries the guarantee set for primes up to `limit`. */
HM_API hm_status hm_prime_search(const hm_complex* cx, int degree, const char* cycle, uint64_t limit, uint64_t cap,
                                 char** out);

/* Point clouds are CSV, one point per line. The radius is a decimal string. */
HM_API hm_status hm_vietoris_rips(const char* csv, const char* radius, int max_dim, char** out);
/* kind: "lemniscate" (50 points) or "wedge" (sphere with two circles, 130
 * points, noise 0.02). */
HM_API hm_status hm_sample(const char* kind, uint64_t seed, char** out_csv);

/* SVG of a simplicial complex with coordinates, highlighting the support of
 * `chain`, or the symmetric difference of supports when `other` is given. */
HM_API hm_status hm_render_svg(const hm_complex* cx, const char* field, const char* chain, const char* other, char** out);

#ifdef __cplusplus
}
#endif

#endif /* HARMONICA_H */
