#pragma once

// Inverse source problem for the space-degenerate equation
//   D_C^alpha U = [(1 - x^2) U_x]_x + h(x),  (t, x) in (0, T] x (-1, 1),
//   U(0, x) = v(x),  U(T, x) = w(x),
// solved as a Fourier-Legendre series.

#include <functional>
#include <string>
#include <vector>

#include "fracinv/legendre.hpp"
#include "fracinv/specfun.hpp"

namespace fracinv {

struct Problem1Spec {
  double alpha = 0.5;
  double T = 1.0;
  std::function<double(double)> v;
  std::function<double(double)> w;
  int N = 32;
};

struct Problem1Solution {
  double alpha = 0.5;
  double T = 1.0;
  std::function<double(double)> v;
  FLCoeffs v_coeffs;
  FLCoeffs w_coeffs;
  std::vector<double> lambda;  // n(n+1)
  std::vector<double> denom;   // 1 - E_alpha(-lambda_n T^alpha), n >= 1
  std::vector<double> h_coeffs;
  MittagLeffler ml{MLParams{0.5, 1.0}};
  double max_est_error = 0.0;  // largest special-function error estimate
  std::vector<std::string> warnings;
};

/// Throws DomainError unless 0 < alpha < 1, T > 0, N >= 0 and v, w are set.
void validate(const Problem1Spec& spec);

Problem1Solution solve_problem1(const Problem1Spec& spec);

/// Legendre amplitudes U_n(t), n = 0..N. Accumulates the largest
/// special-function error estimate into *est_error when given.
std::vector<double> mode_amplitudes(const Problem1Solution& sol, double t,
                                    double* est_error = nullptr);

double eval_U(const Problem1Solution& sol, double t, double x);
/// U(t, x) from amplitudes already computed by mode_amplitudes(sol, t);
/// bit-identical to eval_U.
double eval_U_from_modes(const Problem1Solution& sol,
                         const std::vector<double>& amplitudes, double x);
/// d/dx of the truncated series part of U.
double eval_U_x(const Problem1Solution& sol, double t, double x);
double eval_h(const Problem1Solution& sol, double x);

/// Max over the (t, x) grid of |D_C^alpha U - [(1-x^2)U_x]_x - h|, the
/// Caputo derivative taken by the L1 scheme with step dt on [0, max t].
/// Times are snapped to the nearest step.
double residual_problem1(const Problem1Solution& sol,
                         const std::vector<double>& t_points,
                         const std::vector<double>& x_points, double dt);

}  // namespace fracinv
