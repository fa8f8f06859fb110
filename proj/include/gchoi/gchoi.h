#ifndef GCHOI_GCHOI_H
#define GCHOI_GCHOI_H

/* C interface to libgchoi: generalized Choi maps Phi_A(X) = Delta_A(X) - X.
 *
 * Objects are opaque and owned by the caller once created; release them with
 * the matching *_destroy function. Every call returns a gchoi_status; on
 * failure gchoi_last_error() describes the problem (per thread). */

#include <stddef.h>
#include <stdint.h>

#if defined(GCHOI_BUILDING_LIBRARY)
#define GCHOI_API __attribute__((visibility("default")))
#else
#define GCHOI_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gchoi_status {
  GCHOI_OK = 0,
  GCHOI_INVALID_INPUT = 1,
  GCHOI_NOT_APPLICABLE = 2,
  GCHOI_INTERNAL = 3,
  GCHOI_IO = 4
} gchoi_status;

typedef enum gchoi_summary_flag {
  GCHOI_POSITIVE_PROVEN = 1u << 0,
  GCHOI_NOT_POSITIVE_PROVEN = 1u << 1,
  GCHOI_CP_PROVEN = 1u << 2,
  GCHOI_INDECOMPOSABLE_PROVEN = 1u << 3,
  GCHOI_DECOMPOSABLE_PROVEN = 1u << 4,
  GCHOI_INCONCLUSIVE = 1u << 5
} gchoi_summary_flag;

typedef struct gchoi_matrix gchoi_matrix;
typedef struct gchoi_report gchoi_report;

typedef struct gchoi_config {
  uint64_t seed;
  int starts;
  int max_iterations;
  double step_tolerance;
  double violation_tolerance;
  double tolerance; /* margin band of the analytic conditions */
  unsigned threads; /* 0: hardware concurrency */
} gchoi_config;

GCHOI_API gchoi_config gchoi_config_default(void);

/* n x n coefficient matrix from row-major entries (nonnegative, finite). */
GCHOI_API gchoi_status gchoi_matrix_create(size_t n, const double* row_major, gchoi_matrix** out);
/* JSON file {"n": ..., "A": [[...]]}, optional "X" of [re, im] pairs. */
GCHOI_API gchoi_status gchoi_matrix_load(const char* path, gchoi_matrix** out);
GCHOI_API size_t gchoi_matrix_dim(const gchoi_matrix* m);
GCHOI_API void gchoi_matrix_destroy(gchoi_matrix* m);

GCHOI_API gchoi_status gchoi_analyze(const gchoi_matrix* m, const gchoi_config* cfg, gchoi_report** out);
GCHOI_API gchoi_status gchoi_search(const gchoi_matrix* m, const gchoi_config* cfg, gchoi_report** out);
GCHOI_API gchoi_status gchoi_probe(const gchoi_matrix* m, const gchoi_config* cfg, gchoi_report** out);

/* name: "choi", "example5", "boundary" (a1 a2 a3) or "kye-boundary"
 * (c1 c2 c3). nparams = 0 selects the defaults. */
GCHOI_API gchoi_status gchoi_reproduce(const char* name, const double* params, size_t nparams,
                                       const gchoi_config* cfg, gchoi_report** out);

/* Strings stay valid until the report is destroyed. */
GCHOI_API const char* gchoi_report_json(const gchoi_report* r);
GCHOI_API const char* gchoi_report_text(const gchoi_report* r);
/* Bitwise OR of gchoi_summary_flag values. */
GCHOI_API uint32_t gchoi_report_summary(const gchoi_report* r);
GCHOI_API int gchoi_report_has_violation(const gchoi_report* r);
GCHOI_API int gchoi_report_has_witness(const gchoi_report* r);
GCHOI_API void gchoi_report_destroy(gchoi_report* r);

GCHOI_API const char* gchoi_last_error(void);
GCHOI_API const char* gchoi_version(void);

#ifdef __cplusplus
}
#endif

#endif
