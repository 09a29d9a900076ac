#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracinv::detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Neumaier's improved Kahan summation.
class Neumaier {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Magnitude against which a tolerance is applied: the value itself, floored
/// at the 1/(1+|z|)^2 scale so that zero crossings stay reachable.
inline double accept_scale(double value, double z) {
  const double floor = 1.0 / ((1.0 + std::abs(z)) * (1.0 + std::abs(z)));
  return std::max(std::abs(value), floor);
}

}  // namespace fracinv::detail
