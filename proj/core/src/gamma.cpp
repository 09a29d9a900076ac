#include <cmath>
#include <string>

#include <boost/math/special_functions/sin_pi.hpp>

#include "fracinv/error.hpp"
#include "fracinv/specfun.hpp"

namespace fracinv {
namespace {

bool is_pole(double x) { return x <= 0.0 && std::nearbyint(x) == x; }

}  // namespace

double gamma_fn(double x) {
  if (std::isnan(x)) throw DomainError("gamma_fn: NaN argument");
  if (is_pole(x)) {
    throw PoleError("gamma_fn: pole at x = " + std::to_string(x));
  }
  return std::tgamma(x);
}

double log_abs_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double rgamma(double x) {
  if (is_pole(x)) return 0.0;
  if (x > 0.0) {
    if (x < 170.0) return 1.0 / std::tgamma(x);
    return std::exp(-log_abs_gamma(x));
  }
  // Reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi.
  if (x > -169.0) return 1.0 / std::tgamma(x);
  return boost::math::sin_pi(x) / M_PI * std::exp(log_abs_gamma(1.0 - x));
}

double caputo_ode_solution(double alpha, double lambda, double b0,
                           double f_const, double t) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("caputo_ode_solution: alpha must lie in (0,1]");
  }
  if (!(t >= 0.0)) throw DomainError("caputo_ode_solution: t must be >= 0");
  if (t == 0.0) return b0;
  const double z = lambda * std::pow(t, alpha);
  double y = b0 * mittag_leffler({alpha, 1.0}, z).value;
  if (f_const != 0.0) {
    y += f_const * std::pow(t, alpha) *
         mittag_leffler({alpha, alpha + 1.0}, z).value;
  }
  return y;
}

}  // namespace fracinv
