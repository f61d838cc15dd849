#pragma once

// Job documents (JSON syntax) and the report produced by running them.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sflow/error.hpp"
#include "sflow/grouprep.hpp"
#include "sflow/operators.hpp"

namespace sflow {

struct IrrepSpec {
  std::string name;
  int degree = 1;
  int schur = 1;
  std::vector<double> values;
  friend bool operator==(const IrrepSpec&, const IrrepSpec&) = default;
};

struct GroupSpec {
  std::string preset = "trivial";  // trivial | cyclic | dihedral | explicit
  std::size_t n = 1;
  std::vector<std::vector<std::size_t>> mult_table;
  std::vector<std::vector<std::size_t>> classes;
  std::vector<IrrepSpec> char_table;
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

struct PathSpec {
  PathKind kind = PathKind::Affine;
  Matrix a, b;
  std::vector<double> knots;
  std::vector<Matrix> samples;
  friend bool operator==(const PathSpec&, const PathSpec&) = default;
};

struct JobOptions {
  double tol_cluster = 1e-8;
  double tol_invert = 1e-10;
  int max_depth = 40;
  int min_depth = 0;
  double margin_floor = 1e-7;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 64;    // cogredient
  std::size_t instances = 20;  // verify: random paths besides the job's own
  friend bool operator==(const JobOptions&, const JobOptions&) = default;
};

struct JobSpec {
  std::string command = "sfl";  // sfl | maslov | cogredient | oracle | verify
  GroupSpec group;
  std::map<std::size_t, Matrix> action;  // element index -> matrix; empty = trivial
  PathSpec path;
  Tails tail;
  JobOptions options;
  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

// Throws ParseError (with line and column), SchemaError naming the field,
// DimensionMismatch, and the group/action validation errors.
JobSpec parse_job(const std::string& text);
std::string emit_job(const JobSpec& job);

bool is_known_command(const std::string& command);

// Objects the job describes, built and validated.
GroupHandle build_group(const GroupSpec& spec);
OrthogonalAction build_action(const JobSpec& job, const GroupHandle& group);
OperatorPath build_path(const JobSpec& job);

struct RunResult {
  std::string report;  // JSON, deterministic for a given job
  int exit_code = 0;
};

// 0 success, 2 invalid input, 3 endpoint not invertible, 4 certification
// failed, 5 equivariance violation, 1 anything else.
int exit_code_for(ErrorKind kind) noexcept;

RunResult run(const JobSpec& job);

}  // namespace sflow
