#pragma once

// Named verification checks grouped into suites, with a JSON report.

#include <cstdint>
#include <string>
#include <vector>

namespace fracinv {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string details;
};

inline constexpr std::uint64_t kDefaultSeed = 42;

/// specfun, legendre, fracops, problem1, problem2.
const std::vector<std::string>& suite_names();

/// Check names of a suite, in run order. Throws DomainError for an unknown
/// suite; "all" lists every check.
std::vector<std::string> suite_manifest(const std::string& suite);

/// Runs every check of the suite ("all" for every suite). Check failures and
/// exceptions are reported in the results, never thrown.
std::vector<CheckResult> run_suite(const std::string& suite,
                                   std::uint64_t seed = kDefaultSeed);

/// Runs a single check by name.
CheckResult run_check(const std::string& name, std::uint64_t seed = kDefaultSeed);

/// JSON array of {name, passed, measured, threshold, details}.
std::string report_json(const std::vector<CheckResult>& results);

}  // namespace fracinv
