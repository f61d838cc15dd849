#include "sflow/sflow.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "sflow/error.hpp"
#include "sflow/job.hpp"
#include "sflow/sflcore.hpp"

struct sflow_job {
  sflow::JobSpec spec;
};

struct sflow_report {
  sflow::RunResult result;
};

namespace {

thread_local std::string last_error;

sflow_status fail(sflow_status status, const std::string& message) {
  last_error = message;
  return status;
}

sflow_status status_for(sflow::ErrorKind kind) {
  switch (kind) {
    case sflow::ErrorKind::ParseError:
      return SFLOW_ERR_PARSE;
    case sflow::ErrorKind::SchemaError:
      return SFLOW_ERR_SCHEMA;
    case sflow::ErrorKind::DimensionMismatch:
    case sflow::ErrorKind::DimMismatch:
      return SFLOW_ERR_DIMENSION;
    case sflow::ErrorKind::NonGroup:
    case sflow::ErrorKind::BadCharacterTable:
    case sflow::ErrorKind::TableMismatch:
    case sflow::ErrorKind::NotSymmetric:
      return SFLOW_ERR_INPUT;
    default:
      return SFLOW_ERR_COMPUTE;
  }
}

template <class F>
sflow_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const sflow::Error& e) {
    return fail(status_for(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SFLOW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SFLOW_ERR_INTERNAL, e.what());
  }
}

char* duplicate(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* sflow_version(void) { return SFLOW_VERSION; }

const char* sflow_last_error(void) { return last_error.c_str(); }

sflow_status sflow_job_parse(const char* text, size_t length, sflow_job** out) {
  if (!text || !out) return fail(SFLOW_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto job = std::make_unique<sflow_job>();
    job->spec = sflow::parse_job(std::string(text, length));
    *out = job.release();
    return SFLOW_OK;
  });
}

sflow_status sflow_job_set_command(sflow_job* job, const char* command) {
  if (!job || !command) return fail(SFLOW_ERR_ARGUMENT, "null argument");
  if (!sflow::is_known_command(command))
    return fail(SFLOW_ERR_SCHEMA, std::string("SchemaError: unknown command '") + command + "'");
  job->spec.command = command;
  last_error.clear();
  return SFLOW_OK;
}

sflow_status sflow_job_set_seed(sflow_job* job, uint64_t seed) {
  if (!job) return fail(SFLOW_ERR_ARGUMENT, "null argument");
  job->spec.options.seed = seed;
  last_error.clear();
  return SFLOW_OK;
}

sflow_status sflow_job_emit(const sflow_job* job, char** out) {
  if (!job || !out) return fail(SFLOW_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = duplicate(sflow::emit_job(job->spec));
    return SFLOW_OK;
  });
}

void sflow_job_free(sflow_job* job) { delete job; }

sflow_status sflow_run(const sflow_job* job, sflow_report** out) {
  if (!job || !out) return fail(SFLOW_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto report = std::make_unique<sflow_report>();
    report->result = sflow::run(job->spec);
    *out = report.release();
    return SFLOW_OK;
  });
}

const char* sflow_report_json(const sflow_report* report) { return report ? report->result.report.c_str() : ""; }

int sflow_report_exit_code(const sflow_report* report) { return report ? report->result.exit_code : 1; }

void sflow_report_free(sflow_report* report) { delete report; }

void sflow_string_free(char* s) { delete[] s; }

sflow_status sflow_sfl_affine(size_t dim, const double* a, const double* b, int plus_tail, int minus_tail,
                              int64_t* out) {
  if (!a || !b || !out || dim == 0) return fail(SFLOW_ERR_ARGUMENT, "null argument or zero dimension");
  return guarded([&] {
    sflow::Matrix ma(dim, dim), mb(dim, dim);
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = 0; j < dim; ++j) {
        ma(i, j) = a[i * dim + j];
        mb(i, j) = b[i * dim + j];
      }
    if (sflow::asymmetry(ma) > 1e-10 || sflow::asymmetry(mb) > 1e-10)
      throw sflow::Error(sflow::ErrorKind::NotSymmetric, "blocks must be symmetric");
    const auto path =
        sflow::OperatorPath::affine(std::move(ma), std::move(mb), sflow::Tails{plus_tail != 0, minus_tail != 0});
    sflow::require_invertible_endpoints(path);
    *out = sflow::sfl(path);
    return SFLOW_OK;
  });
}

}  // extern "C"
