#ifndef SFLOW_SFLOW_H
#define SFLOW_SFLOW_H

/* C interface of the spectral flow library. Handles are opaque; every call
 * returns a status code and, on failure, leaves a message retrievable with
 * sflow_last_error() on the calling thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SFLOW_BUILDING)
#    define SFLOW_API __declspec(dllexport)
#  else
#    define SFLOW_API __declspec(dllimport)
#  endif
#else
#  define SFLOW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sflow_status {
  SFLOW_OK = 0,
  SFLOW_ERR_ARGUMENT = 1, /* null pointer or malformed argument */
  SFLOW_ERR_PARSE = 2,    /* document is not valid JSON */
  SFLOW_ERR_SCHEMA = 3,   /* document violates the job schema */
  SFLOW_ERR_DIMENSION = 4,
  SFLOW_ERR_INPUT = 5,    /* other validation failures (group, action) */
  SFLOW_ERR_COMPUTE = 6,  /* numerical failure, see sflow_last_error */
  SFLOW_ERR_INTERNAL = 7
} sflow_status;

typedef struct sflow_job sflow_job;
typedef struct sflow_report sflow_report;

SFLOW_API const char* sflow_version(void);
/* Message of the last failed call on this thread, "" if none. */
SFLOW_API const char* sflow_last_error(void);

SFLOW_API sflow_status sflow_job_parse(const char* text, size_t length, sflow_job** out);
SFLOW_API sflow_status sflow_job_set_command(sflow_job* job, const char* command);
SFLOW_API sflow_status sflow_job_set_seed(sflow_job* job, uint64_t seed);
/* Canonical JSON of the job; release with sflow_string_free. */
SFLOW_API sflow_status sflow_job_emit(const sflow_job* job, char** out);
SFLOW_API void sflow_job_free(sflow_job* job);

/* Runs the job. A report is produced even when the computation fails; its
 * exit code and "error" field describe the failure. */
SFLOW_API sflow_status sflow_run(const sflow_job* job, sflow_report** out);
SFLOW_API const char* sflow_report_json(const sflow_report* report);
SFLOW_API int sflow_report_exit_code(const sflow_report* report);
SFLOW_API void sflow_report_free(sflow_report* report);

SFLOW_API void sflow_string_free(char* s);

/* Classical spectral flow of lambda -> A + lambda B (row-major dim x dim
 * symmetric blocks) with optional +1 / -1 tails. */
SFLOW_API sflow_status sflow_sfl_affine(size_t dim, const double* a, const double* b, int plus_tail, int minus_tail,
                                        int64_t* out);

#ifdef __cplusplus
}
#endif

#endif /* SFLOW_SFLOW_H */
