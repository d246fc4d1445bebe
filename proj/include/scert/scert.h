#ifndef SCERT_SCERT_H
#define SCERT_SCERT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define SCERT_API __attribute__((visibility("default")))
#else
#define SCERT_API
#endif

typedef enum scert_status {
  SCERT_OK = 0,
  SCERT_E_INVALID_ARGUMENT = 1,
  SCERT_E_PARSE = 2,
  SCERT_E_MODE_MISMATCH = 3,
  SCERT_E_DIMENSION = 4,
  SCERT_E_NON_FINITE = 5,
  SCERT_E_UNSUPPORTED = 6,
  SCERT_E_NO_WITNESS = 7,
  SCERT_E_IO = 8,
  SCERT_E_PRECONDITION = 9,
  SCERT_E_INTERNAL = 99
} scert_status;

typedef struct scert_problem scert_problem;
typedef struct scert_certificate scert_certificate;

typedef enum scert_cert_kind { SCERT_CERT_DUAL_BALL = 0, SCERT_CERT_REGION = 1, SCERT_CERT_TRIVIAL = 2 } scert_cert_kind;

/* Message of the last failed call on this thread; valid until the next call. */
SCERT_API const char* scert_last_error(void);
SCERT_API const char* scert_version(void);
/* Frees strings returned through char** outputs. */
SCERT_API void scert_string_free(char* s);

SCERT_API scert_status scert_problem_load(const char* path, scert_problem** out);
SCERT_API scert_status scert_problem_parse(const char* json_text, scert_problem** out);
SCERT_API void scert_problem_free(scert_problem* problem);
SCERT_API scert_status scert_problem_info(const scert_problem* problem, size_t* dimension, size_t* classes,
                                          size_t* members);
SCERT_API scert_status scert_problem_serialize(const scert_problem* problem, char** out);
/* Replaces the ensemble weights; count must equal the number of members. */
SCERT_API scert_status scert_problem_set_weights(scert_problem* problem, const double* weights, size_t count);

/* mode: u, cw, cd, lipschitz-u, lipschitz-cw. norm: "1", "2", "inf" or NULL.
   member: 1-based member index, or 0 for the ensemble (or the only member). */
SCERT_API scert_status scert_certify(const scert_problem* problem, const char* mode, const char* norm, size_t member,
                                     scert_certificate** out);
SCERT_API void scert_certificate_free(scert_certificate* cert);
SCERT_API scert_status scert_certificate_kind(const scert_certificate* cert, scert_cert_kind* kind);
/* has_radius is 0 when the certificate has no ball form; radius may be +inf for the whole space. */
SCERT_API scert_status scert_certificate_radius(const scert_certificate* cert, double* radius, int* has_radius);
SCERT_API scert_status scert_certificate_contains(const scert_certificate* cert, const double* delta, size_t dim,
                                                  int* inside);
SCERT_API scert_status scert_certificate_extent(const scert_certificate* cert, const double* direction, size_t dim,
                                                double* extent);
SCERT_API scert_status scert_certificate_describe(const scert_certificate* cert, char** out);

/* Text reports. */
SCERT_API scert_status scert_certify_report(const scert_problem* problem, const char* mode, const char* norm,
                                            size_t member, char** out);
SCERT_API scert_status scert_ensemble_report(const scert_problem* problem, char** out);
SCERT_API scert_status scert_regime_report(const scert_problem* problem, char** out);
/* subkind: gap-gain, gap-witness, radius, conditions, damning, smoothing. problem may be NULL for
   gap-gain, gap-witness and smoothing. */
SCERT_API scert_status scert_bound_report(const char* subkind, const scert_problem* problem, double rbar, size_t k,
                                          double sigma, char** out);

typedef struct scert_sim_config {
  size_t classes;             /* K, default 4 */
  const size_t* sizes;        /* ensemble sizes N */
  size_t size_count;
  size_t draws;               /* per N */
  uint64_t seed;
  int optimized;              /* 0: uniform weights only */
  size_t resolution;          /* 0: default grid */
  size_t threads;             /* 0: hardware concurrency */
} scert_sim_config;

SCERT_API void scert_sim_config_default(scert_sim_config* config);
/* CSV rows sorted by (n, draw) and a text summary; either output may be NULL. */
SCERT_API scert_status scert_simulate(const scert_sim_config* config, char** csv, char** summary);

/* window: xmin, xmax, ymin, ymax, or NULL for the problem's window (default [-3, 3]^2). */
SCERT_API scert_status scert_render_svg(const scert_problem* problem, const double* window, char** out);

SCERT_API scert_status scert_run_examples(const char* fixture_dir, char** table, size_t* failures);

#ifdef __cplusplus
}
#endif

#endif
