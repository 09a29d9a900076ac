#include "fracinv/verify.hpp"

#include <cmath>
#include <exception>

#include "json.hpp"

#include "fracinv/error.hpp"
#include "verify_registry.hpp"

namespace fracinv {
namespace {

// FNV-1a, so per-check streams do not depend on std::hash.
std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

CheckResult run_entry(const detail::CheckEntry& e, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ name_hash(e.name));
  CheckResult r;
  try {
    r = e.fn(rng);
  } catch (const std::exception& ex) {
    r.passed = false;
    r.measured = std::nan("");
    r.details = std::string("exception: ") + ex.what();
  }
  r.name = e.name;
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"specfun", "legendre", "fracops",
                                                 "problem1", "problem2"};
  return names;
}

std::vector<std::string> suite_manifest(const std::string& suite) {
  bool known = suite == "all";
  for (const auto& s : suite_names()) known = known || s == suite;
  if (!known) throw DomainError("unknown suite '" + suite + "'");
  std::vector<std::string> out;
  for (const auto& e : detail::check_registry()) {
    if (suite == "all" || e.suite == suite) out.push_back(e.name);
  }
  return out;
}

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
  suite_manifest(suite);  // validates the name
  std::vector<CheckResult> out;
  for (const auto& e : detail::check_registry()) {
    if (suite == "all" || e.suite == suite) out.push_back(run_entry(e, seed));
  }
  return out;
}

CheckResult run_check(const std::string& name, std::uint64_t seed) {
  for (const auto& e : detail::check_registry()) {
    if (e.name == name) return run_entry(e, seed);
  }
  throw DomainError("unknown check '" + name + "'");
}

std::string report_json(const std::vector<CheckResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json j;
    j["name"] = r.name;
    j["passed"] = r.passed;
    // JSON has no NaN/inf; those become null.
    if (std::isfinite(r.measured)) j["measured"] = r.measured; else j["measured"] = nullptr;
    if (std::isfinite(r.threshold)) j["threshold"] = r.threshold; else j["threshold"] = nullptr;
    j["details"] = r.details;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace fracinv
