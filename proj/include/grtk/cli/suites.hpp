#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace grtk::cli {

/// One named property check inside a suite.
struct CheckRow {
  std::string suite;
  std::string check;
  bool ok = true;
  std::size_t checks = 0;  // instances examined
  std::string failure;     // first violation, empty when ok
};

/// Names accepted by run_suite, in a fixed order.
const std::vector<std::string>& suite_names();

/// Runs one property suite. arity_cap bounds set sizes and operad arities, max_weight the
/// Lie weights; independent cells run on up to `jobs` threads. Throws std::invalid_argument
/// for an unknown suite or caps below 2.
std::vector<CheckRow> run_suite(const std::string& suite, int arity_cap, int max_weight, int jobs);

}  // namespace grtk::cli
