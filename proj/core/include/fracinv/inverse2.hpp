#pragma once

// Inverse source problem for the time-degenerate equation
//   D_RL^alpha u = t^beta u_xx + h(x),  (t, x) in (0, T] x (0, 1),
//   I^(1-alpha) u |_{t=0} = phi(x),  u(t, 0) = u(t, 1) = 0,  u(T, x) = psi(x),
// solved as a Fourier sine series built on E_{alpha, 1+beta/alpha, n}.

#include <functional>
#include <string>
#include <vector>

#include "fracinv/specfun.hpp"

namespace fracinv {

struct Problem2Spec {
  double alpha = 0.5;
  double beta = 0.5;
  double T = 1.0;
  std::function<double(double)> phi;
  std::function<double(double)> psi;
  int K = 16;
};

struct Problem2Solution {
  double alpha = 0.5;
  double beta = 0.5;
  double T = 1.0;
  int K = 0;            // modes requested
  int effective_K = 0;  // highest mode kept
  std::vector<double> phi_k;  // index k-1
  std::vector<double> psi_k;
  std::vector<double> h_k;
  std::vector<char> active;   // mode evaluated (data not negligible)
  GenMittagLeffler e_phi{GenMLParams{}};  // E_{alpha, m, m - 1/alpha}
  GenMittagLeffler e_h{GenMLParams{}};    // E_{alpha, m, m}
  double max_est_error = 0.0;
  std::vector<std::string> warnings;
};

/// Throws DomainError on out-of-range parameters or incompatible data.
void validate(const Problem2Spec& spec);

/// 2 * integral_0^1 f(x) sin(k pi x) dx for k = 1..K.
std::vector<double> sine_analyze(const std::function<double(double)>& f, int K);

Problem2Solution solve_problem2(const Problem2Spec& spec);

/// Sine amplitude of mode k (1-based) at time t > 0.
double mode_amplitude(const Problem2Solution& sol, int k, double t,
                      double* est_error = nullptr);
/// t^(1-alpha) times the amplitude; finite at t = 0.
double mode_amplitude_scaled(const Problem2Solution& sol, int k, double t);

/// Amplitudes of modes 1..effective_K at time t (zero for skipped modes).
std::vector<double> mode_amplitudes(const Problem2Solution& sol, double t);

double eval_u2(const Problem2Solution& sol, double t, double x);
/// u(t, x) from mode_amplitudes(sol, t); bit-identical to eval_u2.
double eval_u2_from_modes(const Problem2Solution& sol,
                          const std::vector<double>& amplitudes, double x);
double eval_u2_scaled(const Problem2Solution& sol, double t, double x);
double eval_h2(const Problem2Solution& sol, double x);

/// Max over the grid of |D_RL^alpha u - t^beta u_xx - h|. Modes with
/// phi_k = 0 use the L1 scheme; others differentiate the product-integrated
/// I^(1-alpha) u. Times are snapped to the nearest multiple of dt.
double residual_problem2(const Problem2Solution& sol,
                         const std::vector<double>& t_points,
                         const std::vector<double>& x_points, double dt);

/// I^(1-alpha) u(t, x) by product integration with step dt.
double initial_trace_problem2(const Problem2Solution& sol, double t, double x,
                              double dt);

}  // namespace fracinv
