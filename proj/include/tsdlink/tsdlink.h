/* C interface to the tsdlink core. Every object is an opaque handle; every
 * fallible call returns a tsdlink_status and leaves a message readable
 * through tsdlink_last_error() on the calling thread. */
#ifndef TSDLINK_TSDLINK_H
#define TSDLINK_TSDLINK_H

#include <stdint.h>

#if defined(_WIN32)
#if defined(TSDLINK_BUILDING_DLL)
#define TSDLINK_API __declspec(dllexport)
#else
#define TSDLINK_API __declspec(dllimport)
#endif
#else
#define TSDLINK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tsdlink_status {
  TSDLINK_OK = 0,
  TSDLINK_ERR_INVALID_ARGUMENT = 1,
  TSDLINK_ERR_PARSE = 2,
  TSDLINK_ERR_SCHEMA = 3,
  TSDLINK_ERR_DIVISION_BY_ZERO = 4,
  TSDLINK_ERR_FIELD_MISMATCH = 5,
  TSDLINK_ERR_RANK_MISMATCH = 6,
  TSDLINK_ERR_DIMENSION_CAP = 7,
  TSDLINK_ERR_IO = 8,
  TSDLINK_ERR_INTERNAL = 9
} tsdlink_status;

typedef enum tsdlink_stabilize {
  TSDLINK_STABILIZE_OFF = 0,
  TSDLINK_STABILIZE_PLAIN = 1,
  TSDLINK_STABILIZE_COMPENSATED = 2
} tsdlink_stabilize;

typedef struct tsdlink_algebra tsdlink_algebra;
typedef struct tsdlink_report tsdlink_report;

typedef struct tsdlink_markov_options {
  unsigned trials;          /* >= 1 */
  uint64_t seed;
  unsigned moves_per_trial; /* 0 selects the default (12) */
  tsdlink_stabilize stabilize;
  uint64_t cap;             /* 0 selects the default (10^6) */
} tsdlink_markov_options;

TSDLINK_API const char* tsdlink_version(void);
/* Message of the last failed call on this thread; "" if none. */
TSDLINK_API const char* tsdlink_last_error(void);
TSDLINK_API const char* tsdlink_status_name(tsdlink_status status);

TSDLINK_API tsdlink_status tsdlink_algebra_load_file(const char* path, tsdlink_algebra** out);
TSDLINK_API tsdlink_status tsdlink_algebra_load_json(const char* json_text, tsdlink_algebra** out);
/* "sl2", "so3", "heisenberg3", "nambu4", "abelian<d>". */
TSDLINK_API tsdlink_status tsdlink_algebra_builtin(const char* name, tsdlink_algebra** out);
TSDLINK_API void tsdlink_algebra_free(tsdlink_algebra* algebra);
TSDLINK_API const char* tsdlink_algebra_name(const tsdlink_algebra* algebra);
TSDLINK_API unsigned tsdlink_algebra_dim(const tsdlink_algebra* algebra);
TSDLINK_API int tsdlink_algebra_arity(const tsdlink_algebra* algebra);

/* Jacobi (arity 2) or Filippov (arity 3). */
TSDLINK_API tsdlink_status tsdlink_validate(const tsdlink_algebra* algebra, tsdlink_report** out);
/* property: jacobi, filippov, tsd, coalgebra, reversibility, mixed, ybe,
 * slide, fb-relations or all. */
TSDLINK_API tsdlink_status tsdlink_check(const tsdlink_algebra* algebra, const char* property, tsdlink_report** out);
/* framings may be NULL; otherwise it holds `strands` entries added to the
 * t-letters of the word. cap 0 selects the default. */
TSDLINK_API tsdlink_status tsdlink_invariant(const tsdlink_algebra* algebra, unsigned strands, const char* word,
                                             const long* framings, uint64_t cap, tsdlink_report** out);
TSDLINK_API tsdlink_status tsdlink_markov(const tsdlink_algebra* algebra, unsigned strands, const char* word,
                                          const tsdlink_markov_options* options, tsdlink_report** out);
/* criterion 0 runs all of them. */
TSDLINK_API tsdlink_status tsdlink_selftest(unsigned criterion, tsdlink_report** out);

TSDLINK_API int tsdlink_report_passed(const tsdlink_report* report);
TSDLINK_API const char* tsdlink_report_text(const tsdlink_report* report);
/* {"command":..., "passed":bool, "value":str?, "failures":[...], "timing_ms":int} */
TSDLINK_API const char* tsdlink_report_json(const tsdlink_report* report);
/* NULL when the command has no value. */
TSDLINK_API const char* tsdlink_report_value(const tsdlink_report* report);
TSDLINK_API void tsdlink_report_free(tsdlink_report* report);

#ifdef __cplusplus
}
#endif

#endif
