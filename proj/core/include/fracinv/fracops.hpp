#pragma once

// Numerical fractional operators on uniform grids starting at t = 0. Node
// indices n run over 1..steps; the samples f hold f(t_0)..f(t_steps).

#include <cstddef>
#include <functional>
#include <vector>

namespace fracinv {

struct TimeGrid {
  double t_end = 1.0;
  std::size_t steps = 1;

  double dt() const { return t_end / static_cast<double>(steps); }
  double node(std::size_t j) const { return static_cast<double>(j) * dt(); }
  /// f(t_j) for j = 0..steps.
  std::vector<double> sample(const std::function<double(double)>& f) const;
};

enum class RLMethod {
  CaputoPlusCorrection,  // D_C f + f(0) t^-alpha / Gamma(1-alpha)
  DifferentiateIntegral  // d/dt of the product-trapezoid I^(1-alpha) f
};

/// I^alpha f(t_n), 0 < alpha <= 1, by product trapezoid (f linear on each
/// cell, kernel integrated exactly). Second order for smooth f.
double rl_integral_num(const std::vector<double>& f, double alpha,
                       const TimeGrid& grid, std::size_t n);

/// I^alpha [s^sigma g(s)](t_n) with g linear on each cell and the weight
/// s^sigma (t_n - s)^(alpha-1) integrated exactly (incomplete beta).
/// sigma > -1 allows a weakly singular start; alpha > 0.
double rl_integral_weighted(const std::vector<double>& g, double alpha,
                            double sigma, const TimeGrid& grid, std::size_t n);

/// L1 approximation of the Caputo derivative of order 0 < alpha < 1 at t_n.
/// O(dt^(2-alpha)) for smooth f.
double caputo_deriv_num(const std::vector<double>& f, double alpha,
                        const TimeGrid& grid, std::size_t n);

/// Riemann-Liouville derivative of order 0 < alpha < 1 at t_n, n >= 1.
double rl_deriv_num(const std::vector<double>& f, double alpha,
                    const TimeGrid& grid, std::size_t n,
                    RLMethod method = RLMethod::CaputoPlusCorrection);

}  // namespace fracinv
