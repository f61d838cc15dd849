#include "sflow/job.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "sflow/cogredient.hpp"
#include "sflow/error.hpp"
#include "sflow/maslov.hpp"
#include "sflow/random.hpp"
#include "sflow/sflcore.hpp"

namespace sflow {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double kSymmetryTol = 1e-10;
constexpr double kEquivarianceTol = 1e-8;

[[noreturn]] void schema(const std::string& message) { throw Error(ErrorKind::SchemaError, message); }

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      schema((where.empty() ? "" : where + ".") + key + " is not a known field");
  }
}

const json& object_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) schema(where + " is required");
  const json& v = j.at(key);
  if (!v.is_object()) schema(where + " must be an object");
  return v;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) schema(where + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) schema(where + " must be finite");
  return x;
}

std::uint64_t count(const json& v, const std::string& where) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    schema(where + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

bool boolean(const json& v, const std::string& where) {
  if (!v.is_boolean()) schema(where + " must be true or false");
  return v.get<bool>();
}

std::vector<double> number_list(const json& v, const std::string& where) {
  if (!v.is_array()) schema(where + " must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::size_t> index_list(const json& v, const std::string& where) {
  if (!v.is_array()) schema(where + " must be an array of integers");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(count(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Matrix matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) schema(where + " must be a non-empty array of rows");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array()) schema(where + "[" + std::to_string(i) + "] must be an array of numbers");
    if (i == 0) cols = v[i].size();
    if (v[i].size() != cols || cols == 0) schema(where + " rows must have equal, non-zero length");
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = number(v[i][j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  return m;
}

void require_symmetric(const Matrix& m, const std::string& where) {
  if (!m.square()) throw Error(ErrorKind::DimensionMismatch, where + " must be square");
  if (asymmetry(m) > kSymmetryTol) schema(where + " not symmetric");
}

GroupSpec parse_group(const json& j) {
  GroupSpec g;
  if (j.contains("preset")) {
    only_keys(j, "group", {"preset", "n"});
    if (!j["preset"].is_string()) schema("group.preset must be a string");
    g.preset = j["preset"].get<std::string>();
    if (g.preset == "trivial") {
      g.n = 1;
      if (j.contains("n") && count(j["n"], "group.n") != 1) schema("group.n must be 1 for the trivial group");
    } else if (g.preset == "cyclic" || g.preset == "dihedral") {
      if (!j.contains("n")) schema("group.n is required");
      g.n = count(j["n"], "group.n");
      if (g.n < 1 || (g.preset == "dihedral" && g.n < 2)) schema("group.n out of range");
    } else {
      schema("group.preset must be trivial, cyclic or dihedral");
    }
    return g;
  }
  only_keys(j, "group", {"order", "mult_table", "classes", "char_table"});
  g.preset = "explicit";
  if (!j.contains("order")) schema("group.order is required");
  g.n = count(j["order"], "group.order");
  if (!j.contains("mult_table") || !j["mult_table"].is_array()) schema("group.mult_table must be an array of rows");
  for (std::size_t i = 0; i < j["mult_table"].size(); ++i)
    g.mult_table.push_back(index_list(j["mult_table"][i], "group.mult_table[" + std::to_string(i) + "]"));
  if (g.mult_table.size() != g.n) throw Error(ErrorKind::DimensionMismatch, "group.mult_table has the wrong number of rows");
  if (!j.contains("classes") || !j["classes"].is_array()) schema("group.classes must be an array");
  for (std::size_t i = 0; i < j["classes"].size(); ++i)
    g.classes.push_back(index_list(j["classes"][i], "group.classes[" + std::to_string(i) + "]"));
  if (!j.contains("char_table") || !j["char_table"].is_array()) schema("group.char_table must be an array");
  for (std::size_t i = 0; i < j["char_table"].size(); ++i) {
    const json& e = j["char_table"][i];
    const std::string where = "group.char_table[" + std::to_string(i) + "]";
    if (!e.is_object()) schema(where + " must be an object");
    only_keys(e, where, {"name", "degree", "schur", "values"});
    IrrepSpec irrep;
    if (!e.contains("name") || !e["name"].is_string()) schema(where + ".name must be a string");
    irrep.name = e["name"].get<std::string>();
    irrep.degree = e.contains("degree") ? int(count(e["degree"], where + ".degree")) : 1;
    irrep.schur = e.contains("schur") ? int(count(e["schur"], where + ".schur")) : 1;
    if (!e.contains("values")) schema(where + ".values is required");
    irrep.values = number_list(e["values"], where + ".values");
    g.char_table.push_back(std::move(irrep));
  }
  return g;
}

PathSpec parse_path(const json& j) {
  PathSpec p;
  if (!j.contains("kind") || !j["kind"].is_string()) schema("path.kind must be a string");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "affine") {
    only_keys(j, "path", {"kind", "A", "B"});
    p.kind = PathKind::Affine;
    if (!j.contains("A")) schema("path.A is required");
    if (!j.contains("B")) schema("path.B is required");
    p.a = matrix(j["A"], "path.A");
    p.b = matrix(j["B"], "path.B");
    require_symmetric(p.a, "path.A");
    require_symmetric(p.b, "path.B");
    if (p.a.rows() != p.b.rows()) throw Error(ErrorKind::DimensionMismatch, "path.A and path.B differ in size");
    return p;
  }
  if (kind != "piecewise_linear") schema("path.kind must be affine or piecewise_linear");
  only_keys(j, "path", {"kind", "knots", "samples"});
  p.kind = PathKind::PiecewiseLinear;
  if (!j.contains("knots")) schema("path.knots is required");
  p.knots = number_list(j["knots"], "path.knots");
  if (p.knots.size() < 2 || p.knots.front() != 0.0 || p.knots.back() != 1.0 ||
      std::adjacent_find(p.knots.begin(), p.knots.end(), std::greater_equal<double>()) != p.knots.end())
    schema("path.knots must increase strictly from 0 to 1");
  if (!j.contains("samples") || !j["samples"].is_array()) schema("path.samples must be an array of matrices");
  if (j["samples"].size() != p.knots.size()) schema("path.samples must have one matrix per knot");
  for (std::size_t i = 0; i < p.knots.size(); ++i) {
    const std::string where = "path.samples[" + std::to_string(i) + "]";
    p.samples.push_back(matrix(j["samples"][i], where));
    require_symmetric(p.samples.back(), where);
    if (p.samples.back().rows() != p.samples.front().rows())
      throw Error(ErrorKind::DimensionMismatch, where + " differs in size from path.samples[0]");
  }
  return p;
}

JobOptions parse_options(const json& j) {
  JobOptions o;
  only_keys(j, "options",
            {"tol_cluster", "tol_invert", "max_depth", "min_depth", "margin_floor", "m", "seed", "samples", "instances"});
  auto positive = [&](const char* key, double& slot) {
    if (!j.contains(key)) return;
    slot = number(j[key], std::string("options.") + key);
    if (!(slot > 0.0)) schema(std::string("options.") + key + " must be positive");
  };
  positive("tol_cluster", o.tol_cluster);
  positive("tol_invert", o.tol_invert);
  positive("margin_floor", o.margin_floor);
  if (j.contains("max_depth")) o.max_depth = int(std::min<std::uint64_t>(count(j["max_depth"], "options.max_depth"), 60));
  if (j.contains("min_depth")) o.min_depth = int(std::min<std::uint64_t>(count(j["min_depth"], "options.min_depth"), 60));
  if (j.contains("m")) o.m = count(j["m"], "options.m");
  if (j.contains("seed")) o.seed = count(j["seed"], "options.seed");
  if (j.contains("samples")) o.samples = count(j["samples"], "options.samples");
  if (j.contains("instances")) o.instances = count(j["instances"], "options.instances");
  if (o.samples < 2) schema("options.samples must be at least 2");
  if (o.min_depth > o.max_depth) schema("options.min_depth exceeds options.max_depth");
  return o;
}

ordered_json matrix_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

bool is_known_command(const std::string& c) {
  return c == "sfl" || c == "maslov" || c == "cogredient" || c == "oracle" || c == "verify";
}

JobSpec parse_job(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    const auto colon = what.find("parse error");
    throw Error(ErrorKind::ParseError, locate(text, e.byte) + ": " + (colon == std::string::npos ? what : what.substr(colon)));
  }
  if (!j.is_object()) schema("document must be an object");
  only_keys(j, "", {"command", "group", "action", "path", "tail", "options"});
  JobSpec job;
  if (j.contains("command")) {
    if (!j["command"].is_string()) schema("command must be a string");
    job.command = j["command"].get<std::string>();
    if (!is_known_command(job.command)) schema("command must be one of sfl, maslov, cogredient, oracle, verify");
  }
  if (j.contains("group")) job.group = parse_group(object_field(j, "group", "group"));
  if (j.contains("action")) {
    const json& a = object_field(j, "action", "action");
    only_keys(a, "action", {"matrices"});
    if (a.contains("matrices")) {
      const json& ms = object_field(a, "matrices", "action.matrices");
      for (const auto& [key, value] : ms.items()) {
        std::size_t elem = 0;
        std::size_t used = 0;
        try {
          elem = std::stoul(key, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != key.size() || key.empty()) schema("action.matrices key '" + key + "' is not an element index");
        job.action[elem] = matrix(value, "action.matrices." + key);
      }
    }
  }
  job.path = parse_path(object_field(j, "path", "path"));
  if (j.contains("tail")) {
    const json& t = object_field(j, "tail", "tail");
    only_keys(t, "tail", {"plus", "minus"});
    if (t.contains("plus")) job.tail.plus = boolean(t["plus"], "tail.plus");
    if (t.contains("minus")) job.tail.minus = boolean(t["minus"], "tail.minus");
  }
  if (j.contains("options")) job.options = parse_options(object_field(j, "options", "options"));

  const GroupHandle group = build_group(job.group);
  (void)build_action(job, group);
  return job;
}

std::string emit_job(const JobSpec& job) {
  ordered_json j;
  j["command"] = job.command;
  ordered_json g;
  if (job.group.preset == "explicit") {
    g["order"] = job.group.n;
    g["mult_table"] = job.group.mult_table;
    g["classes"] = job.group.classes;
    g["char_table"] = ordered_json::array();
    for (const auto& irrep : job.group.char_table)
      g["char_table"].push_back(
          {{"name", irrep.name}, {"degree", irrep.degree}, {"schur", irrep.schur}, {"values", irrep.values}});
  } else {
    g["preset"] = job.group.preset;
    g["n"] = job.group.n;
  }
  j["group"] = std::move(g);
  ordered_json matrices = ordered_json::object();
  for (const auto& [elem, m] : job.action) matrices[std::to_string(elem)] = matrix_json(m);
  j["action"] = {{"matrices", std::move(matrices)}};
  ordered_json p;
  if (job.path.kind == PathKind::Affine) {
    p["kind"] = "affine";
    p["A"] = matrix_json(job.path.a);
    p["B"] = matrix_json(job.path.b);
  } else {
    p["kind"] = "piecewise_linear";
    p["knots"] = job.path.knots;
    p["samples"] = ordered_json::array();
    for (const auto& s : job.path.samples) p["samples"].push_back(matrix_json(s));
  }
  j["path"] = std::move(p);
  j["tail"] = {{"plus", job.tail.plus}, {"minus", job.tail.minus}};
  const JobOptions& o = job.options;
  j["options"] = {{"tol_cluster", o.tol_cluster}, {"tol_invert", o.tol_invert}, {"max_depth", o.max_depth},
                  {"min_depth", o.min_depth},     {"margin_floor", o.margin_floor}, {"m", o.m},
                  {"seed", o.seed},               {"samples", o.samples},       {"instances", o.instances}};
  return j.dump(2) + "\n";
}

GroupHandle build_group(const GroupSpec& spec) {
  if (spec.preset == "trivial") return trivial_group();
  if (spec.preset == "cyclic") return cyclic_group(spec.n);
  if (spec.preset == "dihedral") return dihedral_group(spec.n);
  std::vector<Irrep> irreps;
  for (const auto& i : spec.char_table) irreps.push_back(Irrep{i.name, i.degree, i.schur, i.values});
  return explicit_group(spec.mult_table, spec.classes, std::move(irreps));
}

OrthogonalAction build_action(const JobSpec& job, const GroupHandle& group) {
  const std::size_t dim = job.path.kind == PathKind::Affine ? job.path.a.rows() : job.path.samples.front().rows();
  std::vector<std::pair<std::size_t, Matrix>> gens(job.action.begin(), job.action.end());
  if (gens.empty()) return OrthogonalAction::trivial(group, dim);
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (gens[k].second.rows() != dim || gens[k].second.cols() != dim)
      throw Error(ErrorKind::DimensionMismatch, "action.matrices." + std::to_string(gens[k].first) + " is " +
                                                    std::to_string(gens[k].second.rows()) + "x" +
                                                    std::to_string(gens[k].second.cols()) + " but the path is " +
                                                    std::to_string(dim) + "x" + std::to_string(dim));
  return OrthogonalAction::from_generators(group, gens, dim);
}

OperatorPath build_path(const JobSpec& job) {
  if (job.path.kind == PathKind::Affine) return OperatorPath::affine(job.path.a, job.path.b, job.tail);
  return OperatorPath::piecewise_linear(job.path.knots, job.path.samples, job.tail);
}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::SchemaError:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::DimMismatch:
    case ErrorKind::NonGroup:
    case ErrorKind::BadCharacterTable:
    case ErrorKind::TableMismatch:
    case ErrorKind::WrongGroup:
    case ErrorKind::OutOfRange:
    case ErrorKind::InfiniteRank:
    case ErrorKind::NotSymmetric:
    case ErrorKind::NotFSplus:
    case ErrorKind::NotFSi:
    case ErrorKind::EndpointMismatch:
    case ErrorKind::TailMismatch:
      return 2;
    case ErrorKind::EndpointNotInvertible:
    case ErrorKind::NotInvertible:
      return 3;
    case ErrorKind::CertificationFailed:
    case ErrorKind::BoundaryHit:
    case ErrorKind::CoverFailure:
      return 4;
    case ErrorKind::NotEquivariant:
    case ErrorKind::NotInvariant:
      return 5;
    default:
      return 1;
  }
}

namespace {

ordered_json rep_json(const VirtualRep& v) {
  ordered_json out = ordered_json::object();
  const auto& irreps = v.group()->table().irreps;
  for (std::size_t nu = 0; nu < irreps.size(); ++nu) out[irreps[nu].name] = v[nu];
  return out;
}

const char* scale_name(SpectralScale s) { return s == SpectralScale::Arctan ? "arctan" : "identity"; }

void fill_sfl(ordered_json& rep, const SflReport& r, bool z2) {
  rep["sfl"] = r.sfl;
  rep["sfl_G"] = rep_json(r.sfl_G);
  if (z2) {
    const auto [d, f] = phi_z2(r.sfl_G);
    rep["phi"] = {d, f};
  }
  rep["partition"] = {{"scale", scale_name(r.partition.scale)},
                      {"knots", r.partition.knots},
                      {"levels", r.partition.levels},
                      {"margins", r.partition.margins}};
  ordered_json crossings = ordered_json::array();
  for (const auto& c : r.crossings)
    crossings.push_back({{"interval", {c.left, c.right}}, {"segment", c.segment}, {"class", rep_json(c.cls)}});
  rep["crossings"] = std::move(crossings);
  rep["certified"] = r.certified;
}

void require_equivariant_path(const OperatorPath& path, const OrthogonalAction& action) {
  std::vector<Matrix> defining;
  if (path.kind() == PathKind::Affine) {
    defining = {path.a(), path.b()};
  } else {
    defining = path.samples();
  }
  for (const auto& m : defining) {
    const double c = commutator_norm(action, m);
    if (c > kEquivarianceTol * (1.0 + spectral_norm(m))) {
      std::ostringstream os;
      os << "path does not commute with the action (commutator norm " << c << ")";
      throw Error(ErrorKind::NotEquivariant, os.str());
    }
  }
}

double trace(const Matrix& m) {
  double t = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

std::vector<double> arctan_spectrum(const Matrix& m) {
  std::vector<double> out;
  for (double e : eigh(m).values) out.push_back(std::atan(e));
  return out;
}

SflReport checked_sfl(const OperatorPath& path, const OrthogonalAction& action, const PartitionOptions& opts) {
  SflReport r = sfl_G(path, action, opts);
  const std::int64_t classical = sfl(path, opts);
  if (forgetful(r.sfl_G) != classical) {
    throw Error(ErrorKind::ConsistencyFailure, "dimension of " + r.sfl_G.to_string() + " differs from sfl = " +
                                                   std::to_string(classical));
  }
  return r;
}

void run_command(const JobSpec& job, ordered_json& rep) {
  const GroupHandle group = build_group(job.group);
  const OrthogonalAction action = build_action(job, group);
  const OperatorPath path = build_path(job);
  require_equivariant_path(path, action);
  PartitionOptions opts;
  opts.max_depth = job.options.max_depth;
  opts.min_depth = job.options.min_depth;
  opts.margin_floor = job.options.margin_floor;
  opts.tol.cluster = job.options.tol_cluster;
  opts.tol.invert = job.options.tol_invert;
  const bool z2 = is_z2(*group);
  require_invertible_endpoints(path, opts.tol);

  if (job.command == "sfl") {
    fill_sfl(rep, checked_sfl(path, action, opts), z2);
    return;
  }
  if (job.command == "maslov") {
    const MaslovReport m = maslov_index_G(path, action, opts);
    fill_sfl(rep, m.window, z2);
    ordered_json section;
    section["index"] = rep_json(m.index);
    section["operator_sfl_G"] = rep_json(m.operator_route.sfl_G);
    const Matrix l0 = path.block_at(0.0);
    const Matrix l1 = path.block_at(1.0);
    section["window_spectrum"] = {{"start", arctan_spectrum(l0)}, {"end", arctan_spectrum(l1)}};
    const Matrix w = horizontal_lagrangian(path.dim());
    section["intersection_dims"] = {fredholm_pair_dims(graph_lagrangian(l0), w).intersection,
                                    fredholm_pair_dims(graph_lagrangian(l1), w).intersection};
    rep["maslov"] = std::move(section);
    return;
  }
  if (job.command == "cogredient") {
    const SflReport r = checked_sfl(path, action, opts);
    fill_sfl(rep, r, z2);
    ordered_json section;
    if (path.component() == FSComponent::FSi) {
      section["mode"] = "pointwise";
      ordered_json sections = ordered_json::array();
      for (double lambda : {0.0, 1.0}) {
        const PointwiseSection s = pointwise_section(path.evaluate(lambda), opts.tol.cluster);
        const double comm = std::max(commutator_norm(action, s.m), commutator_norm(action, s.symmetry.block()));
        if (comm > kEquivarianceTol) throw Error(ErrorKind::NotEquivariant, "pointwise section is not equivariant");
        sections.push_back({{"lambda", lambda},
                            {"residual", s.residual},
                            {"kernel_dim", std::llround(trace(s.kernel_projection))},
                            {"commutator", comm}});
      }
      section["sections"] = std::move(sections);
    } else {
      const Parametrix pm = parametrix(path, job.options.samples, &action);
      const SflReport t = sfl_G(pm.transformed_path(path), action, opts);
      section["mode"] = "parametrix";
      section["sign"] = pm.sign;
      section["samples"] = pm.lambdas.size();
      section["centers"] = pm.centers;
      section["max_residual"] = pm.max_relative_residual(path);
      section["max_commutator"] = pm.max_commutator(action);
      section["min_singular_value"] = pm.min_singular_value();
      section["sfl_G_transformed"] = rep_json(t.sfl_G);
      rep["cogredient"] = std::move(section);
      if (!(t.sfl_G == r.sfl_G))
        throw Error(ErrorKind::ConsistencyFailure, "transformed path has spectral flow " + t.sfl_G.to_string());
      return;
    }
    rep["cogredient"] = std::move(section);
    return;
  }
  if (job.command == "oracle") {
    const SflReport r = checked_sfl(path, action, opts);
    fill_sfl(rep, r, z2);
    const VirtualRep o = morse_oracle_sfl_G(path, action, job.options.m, opts.tol);
    rep["oracle"] = {{"m", job.options.m}, {"sfl_G", rep_json(o)}, {"agrees", o == r.sfl_G}};
    if (!(o == r.sfl_G))
      throw Error(ErrorKind::ConsistencyFailure, "Morse oracle gives " + o.to_string() + ", partition gives " +
                                                     r.sfl_G.to_string());
    return;
  }
  // verify
  fill_sfl(rep, checked_sfl(path, action, opts), z2);
  std::vector<OperatorPath> paths{path};
  EquivariantSampler sampler(action, job.options.seed);
  for (std::size_t i = 0; i < job.options.instances; ++i) paths.push_back(sampler.path(path.tails(), i % 2 == 1));
  const AxiomReport axioms = verify_axioms(paths, action, job.options.seed, opts);
  ordered_json list = ordered_json::array();
  for (const auto& a : axioms.results)
    list.push_back({{"name", a.name}, {"passed", a.passed}, {"instances", a.instances}, {"witness", a.witness}});
  rep["axioms"] = std::move(list);
  rep["all_passed"] = axioms.all_passed();
  if (!axioms.all_passed()) throw Error(ErrorKind::ConsistencyFailure, "an axiom check failed");
}

}  // namespace

RunResult run(const JobSpec& job) {
  ordered_json rep;
  rep["command"] = job.command;
  rep["sfl"] = nullptr;
  rep["sfl_G"] = nullptr;
  if (job.group.preset == "cyclic" && job.group.n == 2) rep["phi"] = nullptr;
  rep["partition"] = nullptr;
  rep["crossings"] = ordered_json::array();
  rep["certified"] = false;
  rep["error"] = nullptr;
  RunResult out;
  try {
    if (!is_known_command(job.command)) schema("command must be one of sfl, maslov, cogredient, oracle, verify");
    run_command(job, rep);
  } catch (const Error& e) {
    out.exit_code = exit_code_for(e.kind());
    rep["certified"] = false;
    rep["error"] = {{"code", out.exit_code}, {"kind", to_string(e.kind())}, {"message", e.what()}};
  } catch (const std::exception& e) {
    out.exit_code = 1;
    rep["certified"] = false;
    rep["error"] = {{"code", 1}, {"kind", "Internal"}, {"message", e.what()}};
  }
  out.report = rep.dump(2) + "\n";
  return out;
}

}  // namespace sflow
