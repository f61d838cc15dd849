// Command-line front end: reads a job document, runs it through the C
// interface and writes the report.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sflow/sflow.h"

namespace {

enum class LogLevel { Error, Info, Debug };

LogLevel log_level() {
  const char* env = std::getenv("SFLOW_LOG");
  if (!env) return LogLevel::Error;
  const std::string v = env;
  if (v == "debug") return LogLevel::Debug;
  if (v == "info") return LogLevel::Info;
  return LogLevel::Error;
}

void log(LogLevel at, const std::string& message) {
  static const LogLevel level = log_level();
  if (at <= level) std::cerr << "sflow: " << message << "\n";
}

std::optional<std::string> read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  buf << in.rdbuf();
  return buf.str();
}

// Writes next to the target and renames, so readers never see a partial file.
bool write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return static_cast<bool>(std::cout);
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << text;
    if (!out.flush()) return false;
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    return false;
  }
  return true;
}

std::string failure_report(const std::string& command, int code, const std::string& kind, const std::string& message) {
  nlohmann::ordered_json rep;
  rep["command"] = command.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(command);
  rep["sfl"] = nullptr;
  rep["sfl_G"] = nullptr;
  rep["partition"] = nullptr;
  rep["crossings"] = nlohmann::ordered_json::array();
  rep["certified"] = false;
  rep["error"] = {{"code", code}, {"kind", kind}, {"message", message}};
  return rep.dump(2) + "\n";
}

std::string kind_of(const std::string& message) {
  const auto colon = message.find(':');
  return colon == std::string::npos ? "Internal" : message.substr(0, colon);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified classical and equivariant spectral flow"};
  std::string input = "-";
  std::string output = "-";
  std::string command;
  std::optional<std::uint64_t> seed;
  app.add_option("-i,--input", input, "Job document (JSON), '-' for stdin");
  app.add_option("-o,--output", output, "Report destination, '-' for stdout");
  app.add_option("-c,--command", command, "Override the document's command")
      ->check(CLI::IsMember({"sfl", "maslov", "cogredient", "oracle", "verify"}));
  app.add_option("-s,--seed", seed, "Seed for randomized checks (verify)");
  app.set_version_flag("--version", std::string(sflow_version()));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const auto text = read_input(input);
  if (!text) {
    log(LogLevel::Error, "cannot read " + input);
    write_output(output, failure_report(command, 2, "IoError", "cannot read " + input));
    return 2;
  }

  sflow_job* job = nullptr;
  if (sflow_job_parse(text->data(), text->size(), &job) != SFLOW_OK) {
    const std::string message = sflow_last_error();
    log(LogLevel::Error, message);
    write_output(output, failure_report(command, 2, kind_of(message), message));
    return 2;
  }
  if (!command.empty()) sflow_job_set_command(job, command.c_str());
  if (seed) sflow_job_set_seed(job, *seed);
  if (log_level() == LogLevel::Debug) {
    char* emitted = nullptr;
    if (sflow_job_emit(job, &emitted) == SFLOW_OK) {
      log(LogLevel::Debug, std::string("job:\n") + emitted);
      sflow_string_free(emitted);
    }
  }

  sflow_report* report = nullptr;
  if (sflow_run(job, &report) != SFLOW_OK) {
    const std::string message = sflow_last_error();
    log(LogLevel::Error, message);
    write_output(output, failure_report(command, 1, kind_of(message), message));
    sflow_job_free(job);
    return 1;
  }
  const std::string json_text = sflow_report_json(report);
  const int code = sflow_report_exit_code(report);
  sflow_report_free(report);
  sflow_job_free(job);

  if (code != 0) {
    const auto rep = nlohmann::json::parse(json_text, nullptr, false);
    if (!rep.is_discarded() && rep.contains("error") && rep["error"].is_object())
      log(LogLevel::Error, rep["error"].value("message", std::string("failed")));
  } else {
    log(LogLevel::Info, "done, exit code 0");
  }
  if (!write_output(output, json_text)) {
    log(LogLevel::Error, "cannot write " + output);
    return 1;
  }
  return code;
}
