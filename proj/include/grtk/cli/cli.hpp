#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace grtk::cli {

enum class Format { Json, Csv, Text };

/// Parsed command line. Fields a command does not use keep their defaults.
struct JobConfig {
  std::string command;
  int points = 3;
  int weight = 1;
  int max_weight = 3;
  int arity_cap = 4;
  int degree_floor = 0;  // 0: let each bar cell reach down to −weight
  int letters = 2;
  int max_degree = 6;
  int index = 0;
  int arity_window = 6;
  bool class_test = false;
  bool control = false;
  std::string complex = "ce";
  std::string suite;
  Format format = Format::Json;
  int jobs = 1;
};

/// A configuration the command cannot run with; reported as a usage error.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Result of one command: a table of rows with a fixed column order.
struct Report {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  bool ok = true;  // false on a computation-level failure
};

/// Runs the command described by cfg. Throws ConfigError on an unusable configuration.
Report execute(const JobConfig& cfg);

/// The report in the requested format, newline-terminated.
std::string render(const Report& r, Format f);

/// "p/q" fields, arrays of strings joined by "; ", other nested values as compact JSON.
std::string csv_field(const nlohmann::ordered_json& v);

/// Full command-line entry point; args exclude the program name.
/// Exit codes: 0 success, 1 computation-level failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Directory for DKBasis dumps taken from GRTK_CACHE_DIR; empty when unset.
std::string cache_dir();

/// Writes {"points", "weight", "dimension", "representatives"} for g([n])_w into dir.
void write_basis_dump(const std::string& dir, int n, int w);

}  // namespace grtk::cli
