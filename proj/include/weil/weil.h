/* C interface to the weil library: finite-field towers, Weil descent, last
 * fall degrees, the linearized-system solver and the verification
 * campaigns.
 *
 * Conventions
 *   - Every fallible call returns a weil_status; WEIL_OK is zero.  The
 *     message of the most recent failure on the calling thread is available
 *     from weil_last_error() until the next failing call on that thread.
 *   - Objects are opaque handles released with their *_free function;
 *     passing NULL to a free function is a no-op.
 *   - Strings returned through char** are heap-allocated by the library and
 *     released with weil_string_free.
 *   - Field elements cross the boundary as packed indices: the base-q digits
 *     of the index are the k'-coordinates in the basis 1, t, ..., t^(n-1).
 *   - Structured inputs and outputs use the JSON formats documented in the
 *     README. */
#ifndef WEIL_WEIL_H
#define WEIL_WEIL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(WEIL_BUILDING)
#    define WEIL_API __declspec(dllexport)
#  else
#    define WEIL_API __declspec(dllimport)
#  endif
#else
#  define WEIL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum weil_status {
  WEIL_OK = 0,
  WEIL_INVALID_ARGUMENT = 1,
  WEIL_NON_PRIME_CHARACTERISTIC = 2,
  WEIL_REDUCIBLE_MODULUS = 3,
  WEIL_DIVISION_BY_ZERO = 4,
  WEIL_NOT_A_BASIS = 5,
  WEIL_RING_MISMATCH = 6,
  WEIL_UNASSIGNED_VARIABLE = 7,
  WEIL_DEGREE_TOO_HIGH = 8,
  WEIL_STEP_BUDGET_EXCEEDED = 9,
  WEIL_PARSE_ERROR = 10,
  WEIL_NOT_A_DIVISOR = 11,
  WEIL_NOT_COPRIME = 12,
  WEIL_GCD_CONDITION_FAILED = 13,
  WEIL_SEARCH_BUDGET_EXCEEDED = 14,
  WEIL_NOT_REDUCIBLE = 15,
  WEIL_COORDINATE_NOT_IN_FIELD = 16,
  WEIL_DEGREE_EXCEEDS_BOUND = 17,
  WEIL_UNSUPPORTED = 18,
  WEIL_INTERNAL = 19
} weil_status;

typedef struct weil_field weil_field;
typedef struct weil_system weil_system;
typedef struct weil_campaign weil_campaign;

WEIL_API const char* weil_version(void);
WEIL_API const char* weil_status_name(int status);
WEIL_API const char* weil_last_error(void);
WEIL_API void weil_string_free(char* s);

/* ---- fields ------------------------------------------------------------ */

/* k = GF(q^n) over k' = GF(q), q = p^e, with the default moduli. */
WEIL_API int weil_field_create(uint32_t p, uint32_t e, uint32_t n, weil_field** out);
WEIL_API int weil_field_from_json(const char* json, weil_field** out);
WEIL_API int weil_field_to_json(const weil_field* field, char** out);
WEIL_API void weil_field_free(weil_field* field);
WEIL_API int weil_field_info(const weil_field* field, uint32_t* q, uint32_t* n, uint32_t* size);
WEIL_API int weil_field_add(const weil_field* field, uint32_t a, uint32_t b, uint32_t* out);
WEIL_API int weil_field_mul(const weil_field* field, uint32_t a, uint32_t b, uint32_t* out);
WEIL_API int weil_field_inv(const weil_field* field, uint32_t a, uint32_t* out);
/* a^(q^i) */
WEIL_API int weil_field_frobenius(const weil_field* field, uint32_t a, uint64_t i, uint32_t* out);
WEIL_API int weil_field_to_string(const weil_field* field, uint32_t a, char** out);

/* ---- polynomial systems ------------------------------------------------ */

WEIL_API int weil_system_from_json(const char* json, weil_system** out);
WEIL_API int weil_system_to_json(const weil_system* system, char** out);
WEIL_API void weil_system_free(weil_system* system);
WEIL_API int weil_system_size(const weil_system* system, size_t* npolys, size_t* nvars);

typedef enum weil_emit { WEIL_EMIT_FPRIME = 0, WEIL_EMIT_FPRIME1 = 1, WEIL_EMIT_F1 = 2 } weil_emit;

/* Descends a system over k in variables X0..X{m-1}.  basis may be NULL for
 * the polynomial basis; otherwise it holds n packed indices. */
WEIL_API int weil_descend(const weil_system* system, const uint32_t* basis, size_t basis_len, int emit,
                          weil_system** out);

typedef struct weil_fall_options {
  uint32_t cap;             /* 0: the default cap */
  int certify;              /* nonzero: certify with the Groebner oracle */
  int order;                /* 0: grevlex, 1: grlex */
  uint64_t groebner_budget; /* 0: the default budget */
} weil_fall_options;

/* options may be NULL (defaults, certification on); profile_json may be NULL. */
WEIL_API int weil_last_fall_degree(const weil_system* system, const weil_fall_options* options, uint32_t* degree,
                                   int* certified, char** profile_json);

/* ---- linearized systems -------------------------------------------------- */

typedef enum weil_solve_mode {
  WEIL_SOLVE_STRUCTURED = 0,
  WEIL_SOLVE_ORACLE = 1,
  WEIL_SOLVE_COMPARE = 2
} weil_solve_mode;

WEIL_API int weil_solve_linearized(const char* request_json, int mode, char** result_json);

/* ---- generation and campaigns ------------------------------------------- */

/* Seeded random instance: {"mode": "dense" | "linearized", ...}. */
WEIL_API int weil_generate(const char* config_json, char** out_json);

/* kind: "thm11", "thm26", "example" or "solver". */
WEIL_API int weil_campaign_run(const char* kind, const char* config_json, weil_campaign** out);
WEIL_API int weil_campaign_summary(const weil_campaign* campaign, size_t* passed, size_t* failed,
                                   size_t* inconclusive, size_t* filtered);
WEIL_API int weil_campaign_csv(const weil_campaign* campaign, char** out);
WEIL_API int weil_campaign_json(const weil_campaign* campaign, char** out);
WEIL_API int weil_campaign_timings_csv(const weil_campaign* campaign, char** out);
WEIL_API void weil_campaign_free(weil_campaign* campaign);

#ifdef __cplusplus
}
#endif

#endif /* WEIL_WEIL_H */
