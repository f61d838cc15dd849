/* Exercises the shared library through its C header only. */
#include <stdio.h>
#include <string.h>

#include "sflow/sflow.h"

static int failures = 0;

#define EXPECT(cond)                                                 \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                    \
    }                                                                \
  } while (0)

static const char* golden =
    "{\"group\": {\"preset\": \"cyclic\", \"n\": 2},"
    " \"action\": {\"matrices\": {\"1\": [[1, 0], [0, -1]]}},"
    " \"path\": {\"kind\": \"affine\", \"A\": [[-1, 0], [0, 1]], \"B\": [[2, 0], [0, -2]]}}";

int main(void) {
  sflow_job* job = NULL;
  sflow_report* report = NULL;
  char* text = NULL;
  int64_t flow = 0;

  EXPECT(strlen(sflow_version()) > 0);

  EXPECT(sflow_job_parse(golden, strlen(golden), &job) == SFLOW_OK);
  EXPECT(sflow_run(job, &report) == SFLOW_OK);
  EXPECT(sflow_report_exit_code(report) == 0);
  EXPECT(strstr(sflow_report_json(report), "\"phi\": [\n    0,\n    1\n  ]") != NULL);
  sflow_report_free(report);

  EXPECT(sflow_job_set_command(job, "maslov") == SFLOW_OK);
  EXPECT(sflow_job_set_command(job, "plot") == SFLOW_ERR_SCHEMA);
  EXPECT(strstr(sflow_last_error(), "plot") != NULL);
  EXPECT(sflow_job_set_seed(job, 42) == SFLOW_OK);
  EXPECT(sflow_job_emit(job, &text) == SFLOW_OK);
  EXPECT(strstr(text, "\"maslov\"") != NULL);
  EXPECT(strstr(text, "\"seed\": 42") != NULL);
  sflow_string_free(text);
  sflow_job_free(job);

  job = NULL;
  EXPECT(sflow_job_parse("{\"path\": ", 9, &job) == SFLOW_ERR_PARSE);
  EXPECT(job == NULL);
  EXPECT(strstr(sflow_last_error(), "ParseError") != NULL);
  EXPECT(sflow_job_parse(NULL, 0, &job) == SFLOW_ERR_ARGUMENT);

  {
    const double a[] = {-1, 0, 0, 3};
    const double b[] = {2, 0, 0, 0};
    const double singular[] = {0, 0, 0, 1};
    const double skew[] = {0, 1, 0, 0};
    EXPECT(sflow_sfl_affine(2, a, b, 0, 0, &flow) == SFLOW_OK);
    EXPECT(flow == 1);
    EXPECT(sflow_sfl_affine(2, a, b, 1, 1, &flow) == SFLOW_OK);
    EXPECT(flow == 1);
    EXPECT(sflow_sfl_affine(2, singular, b, 0, 0, &flow) == SFLOW_ERR_COMPUTE);
    EXPECT(strstr(sflow_last_error(), "lambda = 0") != NULL);
    EXPECT(sflow_sfl_affine(2, skew, b, 0, 0, &flow) == SFLOW_ERR_INPUT);
  }

  if (failures == 0) printf("capi: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
