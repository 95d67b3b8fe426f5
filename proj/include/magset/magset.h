/*
 * C interface to the magset library: construction, verification and exact
 * search of sets whose single-error syndromes are distinct, and the codes
 * they define.
 *
 * Conventions:
 *  - Every fallible call returns magset_status; MAGSET_OK is 0.
 *  - On failure, magset_last_error() describes the most recent error on the
 *    calling thread.
 *  - Objects are opaque handles released with their matching *_free call.
 *    Pointers returned by accessors stay valid until the handle is freed.
 *  - Strings returned through char** are released with magset_string_free.
 */
#ifndef MAGSET_MAGSET_H_
#define MAGSET_MAGSET_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(MAGSET_BUILDING_LIBRARY)
#define MAGSET_API __declspec(dllexport)
#else
#define MAGSET_API __declspec(dllimport)
#endif
#else
#define MAGSET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum magset_status {
  MAGSET_OK = 0,
  MAGSET_ERR_INVALID_ARGUMENT = 1,
  MAGSET_ERR_CONSTRUCTION_FAILURE = 2,
  MAGSET_ERR_NO_UNIT_PIVOT = 3,
  MAGSET_ERR_UNKNOWN_SYNDROME = 4,
  MAGSET_ERR_LENGTH_MISMATCH = 5,
  MAGSET_ERR_IO = 6,
  MAGSET_ERR_INTERNAL = 7
} magset_status;

typedef struct magset_report magset_report;
typedef struct magset_search_result magset_search_result;
typedef struct magset_cache magset_cache;
typedef struct magset_code magset_code;

/* ---- general ---------------------------------------------------------- */

MAGSET_API const char* magset_version(void);
MAGSET_API const char* magset_status_name(magset_status status);
/* Message of the last failed call on this thread ("" if none). */
MAGSET_API const char* magset_last_error(void);
MAGSET_API void magset_string_free(char* text);

/* floor((q - 1) / lambda). */
MAGSET_API magset_status magset_hamming_bound(uint64_t q, unsigned lambda, uint64_t* out);

/* ---- verification ------------------------------------------------------ */

typedef struct magset_verdict {
  int valid;
  /* When invalid: e1*b1 == e2*b2 (mod q), or e1*b1 == 0 when e2 == 0. */
  uint64_t e1, b1, e2, b2;
} magset_verdict;

/* Elements must be distinct residues in [1, q-1]; order is irrelevant. */
MAGSET_API magset_status magset_verify(uint64_t q, unsigned lambda, const uint64_t* elements, size_t count,
                                       magset_verdict* out);

/* ---- search ------------------------------------------------------------ */

/* Exact search results persisted as JSON lines; only exact records are
 * served back. */
MAGSET_API magset_status magset_cache_open(const char* path, magset_cache** out);
MAGSET_API void magset_cache_free(magset_cache* cache);

typedef struct magset_search_options {
  uint64_t max_nodes;   /* 0 selects the default */
  uint64_t max_time_ms; /* 0 selects the default */
  magset_cache* cache;  /* may be NULL */
} magset_search_options;

MAGSET_API void magset_search_options_default(magset_search_options* options);

/* Largest valid set mod q. Running out of budget is not an error: the
 * result is then flagged inexact with an upper bound. */
MAGSET_API magset_status magset_search(uint64_t q, unsigned lambda, const magset_search_options* options,
                                       magset_search_result** out);
MAGSET_API uint64_t magset_search_max_size(const magset_search_result* result);
MAGSET_API int magset_search_exact(const magset_search_result* result);
MAGSET_API uint64_t magset_search_upper_bound(const magset_search_result* result);
MAGSET_API uint64_t magset_search_nodes(const magset_search_result* result);
MAGSET_API uint64_t magset_search_elapsed_ms(const magset_search_result* result);
MAGSET_API const uint64_t* magset_search_elements(const magset_search_result* result, size_t* count);
MAGSET_API magset_status magset_search_json(const magset_search_result* result, char** out);
MAGSET_API void magset_search_free(magset_search_result* result);

/* ---- constructions ----------------------------------------------------- */

typedef struct magset_divisor_params {
  uint64_t d;
  uint64_t n;   /* ord_d(3) */
  uint64_t phi; /* phi(d) */
  int two_in_three;
  uint64_t s;
  uint64_t m, k_prime, r_prime; /* when two_in_three */
  uint64_t t, b;                /* when not two_in_three */
  uint64_t gamma_count;         /* cosets of <3> among units mod 2d */
  uint64_t lambda_count;        /* cosets of <3, b> among units mod 2d */
} magset_divisor_params;

/* Case parameters of divisor d for modulus q (gcd(d, 6) = 1, 2d | q). */
MAGSET_API magset_status magset_divisor_context(uint64_t d, uint64_t q, magset_divisor_params* out);

/* Explicit construction for q = 2^k r, gcd(r, 6) = 1, lambda = 4. Odd q is
 * solved by exhaustive search with the given options (may be NULL). */
MAGSET_API magset_status magset_construct(uint64_t q, const magset_search_options* options, magset_report** out);
MAGSET_API uint64_t magset_report_q(const magset_report* report);
MAGSET_API uint64_t magset_report_size(const magset_report* report);
MAGSET_API uint64_t magset_report_claimed_size(const magset_report* report);
MAGSET_API uint64_t magset_report_upper_bound(const magset_report* report);
MAGSET_API int magset_report_verified(const magset_report* report);
/* 1: certified maximum; -1: only a lower bound. */
MAGSET_API int magset_report_tight(const magset_report* report);
MAGSET_API const char* magset_report_method(const magset_report* report);
MAGSET_API const uint64_t* magset_report_elements(const magset_report* report, size_t* count);

typedef struct magset_piece_info {
  uint64_t d;
  uint64_t bound;
  int exact;
  size_t count;
  const uint64_t* elements; /* residues mod q, ascending */
  const char* case_label;
} magset_piece_info;

MAGSET_API size_t magset_report_piece_count(const magset_report* report);
MAGSET_API magset_status magset_report_piece(const magset_report* report, size_t index, magset_piece_info* out);
MAGSET_API magset_status magset_report_json(const magset_report* report, char** out);
MAGSET_API void magset_report_free(magset_report* report);

/* ---- codes ------------------------------------------------------------- */

typedef struct magset_decode_info {
  int corrected; /* 0 when the word was already a codeword */
  size_t position;
  unsigned magnitude;
} magset_decode_info;

typedef struct magset_channel_options {
  uint64_t trials;
  double error_rate;
  uint64_t seed;
  int double_errors;
} magset_channel_options;

typedef struct magset_channel_stats {
  uint64_t trials, clean, corrected, detected, miscorrected, injected, seed;
} magset_channel_stats;

/* Parity row `elements` (sorted internally) must be a valid set. */
MAGSET_API magset_status magset_code_create(uint64_t q, unsigned lambda, const uint64_t* elements, size_t count,
                                            magset_code** out);
MAGSET_API size_t magset_code_length(const magset_code* code);
/* Position of the parity-row element used to solve for the check symbol. */
MAGSET_API magset_status magset_code_pivot(const magset_code* code, size_t* position);
MAGSET_API magset_status magset_code_syndrome(const magset_code* code, const uint64_t* word, size_t length,
                                              uint64_t* out);
/* message has length - 1 symbols; out receives length symbols. */
MAGSET_API magset_status magset_code_encode(const magset_code* code, const uint64_t* message, size_t message_length,
                                            uint64_t* out, size_t out_length);
MAGSET_API magset_status magset_code_decode(const magset_code* code, const uint64_t* word, size_t length,
                                            uint64_t* out, magset_decode_info* info);
MAGSET_API magset_status magset_code_simulate(const magset_code* code, const magset_channel_options* options,
                                              magset_channel_stats* out);
MAGSET_API void magset_code_free(magset_code* code);

#ifdef __cplusplus
}
#endif

#endif /* MAGSET_MAGSET_H_ */
