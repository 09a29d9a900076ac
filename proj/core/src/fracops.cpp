#include "fracinv/fracops.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "fracinv/error.hpp"
#include "fracinv/specfun.hpp"

namespace fracinv {
namespace {

void check_index(const std::vector<double>& f, const TimeGrid& grid,
                 std::size_t n, const char* who) {
  if (!(grid.t_end > 0.0) || grid.steps == 0) {
    throw DomainError(std::string(who) + ": grid needs t_end > 0 and steps >= 1");
  }
  if (n < 1 || n > grid.steps) {
    throw DomainError(std::string(who) + ": index out of range");
  }
  if (f.size() < n + 1) throw DomainError(std::string(who) + ": too few samples");
}

// (j+1)^p - j^p for 0 < p < 1.
double first_difference(double p, std::size_t j) {
  if (j == 0) return 1.0;
  const double x = static_cast<double>(j);
  return std::pow(x, p) * std::expm1(p * std::log1p(1.0 / x));
}

// (m+1)^p - 2 m^p + (m-1)^p for m >= 1.
double second_difference(double p, std::size_t m) {
  const double x = static_cast<double>(m);
  if (m < 8) return std::pow(x + 1.0, p) - 2.0 * std::pow(x, p) + std::pow(x - 1.0, p);
  // m^p * 2 sum_{k even >= 2} binom(p, k) m^-k
  const double h2 = 1.0 / (x * x);
  double binom = p * (p - 1.0) / 2.0;
  double hk = h2;
  double sum = 0.0;
  for (int k = 2; k < 60; k += 2) {
    const double term = binom * hk;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    binom *= (p - k) * (p - k - 1.0) / ((k + 1.0) * (k + 2.0));
    hk *= h2;
  }
  return 2.0 * std::pow(x, p) * sum;
}

}  // namespace

std::vector<double> TimeGrid::sample(const std::function<double(double)>& f) const {
  std::vector<double> out(steps + 1);
  for (std::size_t j = 0; j <= steps; ++j) out[j] = f(node(j));
  return out;
}

double rl_integral_num(const std::vector<double>& f, double alpha,
                       const TimeGrid& grid, std::size_t n) {
  check_index(f, grid, n, "rl_integral_num");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("rl_integral_num: alpha must lie in (0, 1]");
  }
  const double p = alpha + 1.0;
  const double nn = static_cast<double>(n);
  double sum = (std::pow(nn - 1.0, p) - (nn - 1.0 - alpha) * std::pow(nn, alpha)) * f[0];
  for (std::size_t j = 1; j < n; ++j) sum += second_difference(p, n - j) * f[j];
  sum += f[n];
  return std::pow(grid.dt(), alpha) * rgamma(alpha + 2.0) * sum;
}

double rl_integral_weighted(const std::vector<double>& g, double alpha,
                            double sigma, const TimeGrid& grid, std::size_t n) {
  check_index(g, grid, n, "rl_integral_weighted");
  if (!(alpha > 0.0) || !(sigma > -1.0)) {
    throw DomainError("rl_integral_weighted: need alpha > 0 and sigma > -1");
  }
  // With s = t u the cell moments are t^(sigma+alpha(+1)) B_u(sigma+1(+1), alpha).
  const double t = grid.node(n);
  const double a0 = sigma + 1.0, a1 = sigma + 2.0;
  const double dt = grid.dt();
  double b0_prev = 0.0, b1_prev = 0.0;
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double u = (j + 1 == n) ? 1.0 : static_cast<double>(j + 1) / static_cast<double>(n);
    const double b0 = boost::math::beta(a0, alpha, u);
    const double b1 = boost::math::beta(a1, alpha, u);
    const double m0 = std::pow(t, sigma + alpha) * (b0 - b0_prev);
    const double m1 = std::pow(t, sigma + alpha + 1.0) * (b1 - b1_prev);
    const double sj = grid.node(j);
    sum += g[j] * m0 + (g[j + 1] - g[j]) * (m1 - sj * m0) / dt;
    b0_prev = b0;
    b1_prev = b1;
  }
  return sum * rgamma(alpha);
}

double caputo_deriv_num(const std::vector<double>& f, double alpha,
                        const TimeGrid& grid, std::size_t n) {
  check_index(f, grid, n, "caputo_deriv_num");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("caputo_deriv_num: alpha must lie in (0, 1)");
  }
  const double p = 1.0 - alpha;
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sum += first_difference(p, j) * (f[n - j] - f[n - j - 1]);
  }
  return sum * std::pow(grid.dt(), -alpha) * rgamma(2.0 - alpha);
}

double rl_deriv_num(const std::vector<double>& f, double alpha,
                    const TimeGrid& grid, std::size_t n, RLMethod method) {
  check_index(f, grid, n, "rl_deriv_num");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("rl_deriv_num: alpha must lie in (0, 1)");
  }
  if (method == RLMethod::CaputoPlusCorrection) {
    const double t = grid.node(n);
    return caputo_deriv_num(f, alpha, grid, n) +
           f[0] * std::pow(t, -alpha) * rgamma(1.0 - alpha);
  }
  const double a = 1.0 - alpha;
  auto integral = [&](std::size_t k) {
    return k == 0 ? 0.0 : rl_integral_num(f, a, grid, k);
  };
  const double dt = grid.dt();
  if (n + 1 <= grid.steps && f.size() > n + 1) {
    return (integral(n + 1) - integral(n - 1)) / (2.0 * dt);
  }
  if (n < 2) throw DomainError("rl_deriv_num: need at least two steps");
  return (3.0 * integral(n) - 4.0 * integral(n - 1) + integral(n - 2)) / (2.0 * dt);
}

}  // namespace fracinv
