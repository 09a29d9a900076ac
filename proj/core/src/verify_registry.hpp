#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fracinv/verify.hpp"

namespace fracinv::detail {

using CheckFn = std::function<CheckResult(std::mt19937_64&)>;

struct CheckEntry {
  std::string suite;
  std::string name;
  CheckFn fn;
};

/// Every check, grouped by suite in run order.
const std::vector<CheckEntry>& check_registry();

}  // namespace fracinv::detail
