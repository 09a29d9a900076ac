#include "fracinv/inverse1.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracinv/error.hpp"
#include "fracinv/fracops.hpp"

namespace fracinv {
namespace {

void check_t(const Problem1Solution& sol, double t) {
  if (!(t >= 0.0 && t <= sol.T * (1.0 + 1e-12))) {
    throw DomainError("problem1: t outside [0, T]");
  }
}

void check_x(double x) {
  if (!(std::abs(x) <= 1.0)) throw DomainError("problem1: x outside [-1, 1]");
}

}  // namespace

void validate(const Problem1Spec& spec) {
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) {
    throw DomainError("problem1: alpha must lie in (0, 1)");
  }
  if (!(spec.T > 0.0) || !std::isfinite(spec.T)) {
    throw DomainError("problem1: T must be positive");
  }
  if (spec.N < 0) throw DomainError("problem1: truncation must be >= 0");
  if (!spec.v || !spec.w) throw DomainError("problem1: v and w are required");
}

Problem1Solution solve_problem1(const Problem1Spec& spec) {
  validate(spec);
  Problem1Solution sol;
  sol.alpha = spec.alpha;
  sol.T = spec.T;
  sol.v = spec.v;
  const QuadRule rule = gauss_legendre_rule(default_quadrature_order(spec.N));
  sol.v_coeffs = fl_analyze(spec.v, spec.N, rule);
  sol.w_coeffs = fl_analyze(spec.w, spec.N, rule);

  const int N = spec.N;
  const double t_alpha = std::pow(spec.T, spec.alpha);
  sol.ml = MittagLeffler({spec.alpha, 1.0}, N * (N + 1.0) * t_alpha);
  sol.lambda.assign(N + 1, 0.0);
  sol.denom.assign(N + 1, 0.0);
  sol.h_coeffs.assign(N + 1, 0.0);
  const auto& v = sol.v_coeffs.coeffs;
  const auto& w = sol.w_coeffs.coeffs;
  sol.h_coeffs[0] = std::tgamma(spec.alpha + 1.0) / t_alpha * (w[0] - v[0]);
  for (int n = 1; n <= N; ++n) {
    const double lam = n * (n + 1.0);
    sol.lambda[n] = lam;
    const EvalResult e = sol.ml(-lam * t_alpha);
    sol.max_est_error = std::max(sol.max_est_error, e.est_abs_error);
    const double d = 1.0 - e.value;
    if (!(d > 0.0)) {
      throw AccuracyError("problem1: 1 - E_alpha(-lambda_n T^alpha) <= 0 at n = " +
                          std::to_string(n));
    }
    sol.denom[n] = d;
    sol.h_coeffs[n] = lam * (w[n] - v[n]) / d + lam * v[n];
  }
  if (N >= 0) {
    const double tail = std::abs(w[N]) + std::abs(v[N]);
    if (N > 0 && tail > 1e-8 * (std::abs(w[0]) + std::abs(v[0]) + 1.0)) {
      sol.warnings.push_back("truncation: |w_N| + |v_N| = " + std::to_string(tail) +
                             " is not negligible at N = " + std::to_string(N));
    }
  }
  return sol;
}

std::vector<double> mode_amplitudes(const Problem1Solution& sol, double t,
                                    double* est_error) {
  check_t(sol, t);
  const auto& v = sol.v_coeffs.coeffs;
  const auto& w = sol.w_coeffs.coeffs;
  const int N = sol.v_coeffs.truncation;
  std::vector<double> u(N + 1, 0.0);
  u[0] = v[0] + std::pow(t / sol.T, sol.alpha) * (w[0] - v[0]);
  const double t_alpha = std::pow(t, sol.alpha);
  for (int n = 1; n <= N; ++n) {
    const double diff = w[n] - v[n];
    u[n] = v[n];
    if (diff == 0.0 || t == 0.0) continue;
    const EvalResult e = sol.ml(-sol.lambda[n] * t_alpha);
    if (est_error) *est_error = std::max(*est_error, e.est_abs_error);
    u[n] += (1.0 - e.value) / sol.denom[n] * diff;
  }
  return u;
}

double eval_U_from_modes(const Problem1Solution& sol,
                         const std::vector<double>& amplitudes, double x) {
  check_x(x);
  // U = v(x) + sum (U_n - v_n) P_n
  std::vector<double> u = amplitudes;
  const auto& v = sol.v_coeffs.coeffs;
  for (std::size_t n = 0; n < u.size(); ++n) u[n] -= v[n];
  return sol.v(x) + fl_synthesize(u, x);
}

double eval_U(const Problem1Solution& sol, double t, double x) {
  check_x(x);
  return eval_U_from_modes(sol, mode_amplitudes(sol, t), x);
}

double eval_U_x(const Problem1Solution& sol, double t, double x) {
  check_x(x);
  return fl_synthesize_deriv(mode_amplitudes(sol, t), x);
}

double eval_h(const Problem1Solution& sol, double x) {
  check_x(x);
  return fl_synthesize(sol.h_coeffs, x);
}

double residual_problem1(const Problem1Solution& sol,
                         const std::vector<double>& t_points,
                         const std::vector<double>& x_points, double dt) {
  if (t_points.empty() || x_points.empty()) return 0.0;
  if (!(dt > 0.0)) throw DomainError("residual_problem1: dt must be positive");
  for (double x : x_points) check_x(x);
  const double t_max = *std::max_element(t_points.begin(), t_points.end());
  check_t(sol, t_max);
  if (!(t_max > 0.0)) throw DomainError("residual_problem1: need t > 0");
  const TimeGrid grid{t_max, static_cast<std::size_t>(std::llround(t_max / dt))};
  std::vector<std::size_t> idx;
  for (double t : t_points) {
    idx.push_back(std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(t / grid.dt()))));
  }

  const auto& v = sol.v_coeffs.coeffs;
  const auto& w = sol.w_coeffs.coeffs;
  const int N = sol.v_coeffs.truncation;
  // Per-mode residuals D_C U_n + lambda_n U_n - h_n at each requested time.
  std::vector<std::vector<double>> r(idx.size(), std::vector<double>(N + 1, 0.0));
  const double t_alpha_end = std::pow(sol.T, sol.alpha);
  for (int n = 0; n <= N; ++n) {
    const double diff = w[n] - v[n];
    if (diff == 0.0) continue;  // U_n is constant and balances h_n exactly
    std::vector<double> u;
    if (n == 0) {
      u = grid.sample([&](double t) {
        return v[0] + std::pow(t, sol.alpha) / t_alpha_end * diff;
      });
    } else {
      u = grid.sample([&](double t) {
        const double e = sol.ml(-sol.lambda[n] * std::pow(t, sol.alpha)).value;
        return v[n] + (1.0 - e) / sol.denom[n] * diff;
      });
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const std::size_t k = idx[i];
      r[i][n] = caputo_deriv_num(u, sol.alpha, grid, k) + sol.lambda[n] * u[k] -
                sol.h_coeffs[n];
    }
  }
  double worst = 0.0;
  for (const auto& ri : r) {
    for (double x : x_points) worst = std::max(worst, std::abs(fl_synthesize(ri, x)));
  }
  return worst;
}

}  // namespace fracinv
