#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dgkit/dg.hpp"

namespace dgkit {

using Json = nlohmann::ordered_json;

/// Every bound is mandatory in a job document.
struct Bounds {
  Window window;
  int words = 0;  // Lambda, bar word weight
  int paths = 0;  // L, path length / realization weight
};

/// One object with the field, bounds and the commands to run on it.
struct JobDocument {
  std::string name;
  int characteristic = 0;
  Bounds bounds;
  Json object;
  std::vector<std::string> commands;
};

/// Input errors carry the JSON pointer of the offending value.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& location, const std::string& what)
      : std::runtime_error(location + ": " + what), location_(location) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

/// A computed invariant failed: a bug, reported with a witness.
class InvariantFailure : public std::runtime_error {
 public:
  InvariantFailure(const std::string& what, Json witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const Json& witness() const { return witness_; }

 private:
  Json witness_;
};

JobDocument parse_job(const std::string& text);

const std::vector<std::string>& command_names();

/// Runs one command; the result is the command's section of the report.
Json run_command(const std::string& command, const JobDocument& job);

/// Report (schema report-v1) for the listed commands, in order.
Json run_job(const JobDocument& job, const std::vector<std::string>& commands);

/// Fixed invariant suite over the built-in fixtures.
Json selftest();

/// Deterministic plain-text rendering of a report.
std::string render_text(const Json& report);

}  // namespace dgkit
