#include "fracinv/inverse2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracinv/error.hpp"
#include "fracinv/fracops.hpp"
#include "fracinv/legendre.hpp"

namespace fracinv {
namespace {

constexpr double kNegligible = 1e-14;

double lambda_k(int k) { return (k * M_PI) * (k * M_PI); }

GenMLParams phi_params(double alpha, double beta) {
  const double m = 1.0 + beta / alpha;
  return {alpha, m, m - 1.0 / alpha};
}

GenMLParams h_params(double alpha, double beta) {
  const double m = 1.0 + beta / alpha;
  return {alpha, m, m};
}

void check_x(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("problem2: x outside [0, 1]");
}

void check_t(const Problem2Solution& sol, double t) {
  if (!(t >= 0.0 && t <= sol.T * (1.0 + 1e-12))) {
    throw DomainError("problem2: t outside [0, T]");
  }
}

bool has_phi(const Problem2Solution& sol) {
  for (int k = 1; k <= sol.effective_K; ++k) {
    if (sol.active[k - 1] && sol.phi_k[k - 1] != 0.0) return true;
  }
  return false;
}

}  // namespace

void validate(const Problem2Spec& spec) {
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) {
    throw DomainError("problem2: alpha must lie in (0, 1)");
  }
  if (!(spec.beta >= 0.0) || !std::isfinite(spec.beta)) {
    throw DomainError("problem2: beta must be >= 0");
  }
  // Validity of the series needs beta > -{alpha}; with 0 < alpha < 1 this
  // is beta > -alpha.
  if (!(spec.beta > -(spec.alpha - std::floor(spec.alpha)))) {
    throw DomainError("problem2: beta must exceed -frac(alpha)");
  }
  if (!(spec.T > 0.0) || !std::isfinite(spec.T)) {
    throw DomainError("problem2: T must be positive");
  }
  if (spec.K < 1) throw DomainError("problem2: K must be >= 1");
  if (!spec.phi || !spec.psi) throw DomainError("problem2: phi and psi are required");
  for (double x : {0.0, 1.0}) {
    if (std::abs(spec.phi(x)) > 1e-12 || std::abs(spec.psi(x)) > 1e-12) {
      throw DomainError("problem2: data must vanish at x = 0 and x = 1");
    }
  }
}

std::vector<double> sine_analyze(const std::function<double(double)>& f, int K) {
  if (K < 1) throw DomainError("sine_analyze: K must be >= 1");
  const QuadRule rule = gauss_legendre_rule(std::max(4 * K, 64));
  std::vector<double> c(K, 0.0);
  for (int q = 0; q < rule.order; ++q) {
    const double x = 0.5 * (rule.nodes[q] + 1.0);
    const double fw = f(x) * rule.weights[q];  // 2 * (w/2)
    for (int k = 1; k <= K; ++k) c[k - 1] += fw * std::sin(k * M_PI * x);
  }
  return c;
}

Problem2Solution solve_problem2(const Problem2Spec& spec) {
  validate(spec);
  Problem2Solution sol;
  sol.alpha = spec.alpha;
  sol.beta = spec.beta;
  sol.T = spec.T;
  sol.K = spec.K;
  sol.phi_k = sine_analyze(spec.phi, spec.K);
  sol.psi_k = sine_analyze(spec.psi, spec.K);
  sol.h_k.assign(spec.K, 0.0);
  sol.active.assign(spec.K, 0);

  double scale = 0.0;
  for (int k = 0; k < spec.K; ++k) {
    scale = std::max({scale, std::abs(sol.phi_k[k]), std::abs(sol.psi_k[k])});
  }
  const GenMLParams pp = phi_params(spec.alpha, spec.beta);
  const GenMLParams ph = h_params(spec.alpha, spec.beta);
  const double t_ab = std::pow(spec.T, spec.alpha + spec.beta);

  // Highest mode whose evaluations fit the precision budget.
  sol.effective_K = 0;
  for (int k = 1; k <= spec.K; ++k) {
    const bool needed = std::abs(sol.phi_k[k - 1]) > kNegligible * scale ||
                        std::abs(sol.psi_k[k - 1]) > kNegligible * scale;
    if (!needed) continue;
    const double z = -lambda_k(k) * t_ab;
    const int bits = std::max(gen_ml_required_bits(pp, z), gen_ml_required_bits(ph, z));
    if (bits > kMaxPrecisionBits) {
      sol.warnings.push_back("mode cap: E_{alpha,m,n} at mode " + std::to_string(k) +
                             " needs " + std::to_string(bits) +
                             " bits; series truncated at K = " +
                             std::to_string(sol.effective_K));
      break;
    }
    sol.active[k - 1] = 1;
    sol.effective_K = k;
  }
  const double z_max = lambda_k(std::max(sol.effective_K, 1)) * t_ab;
  bool phi_used = false;
  for (int k = 1; k <= sol.effective_K; ++k) {
    phi_used = phi_used || (sol.active[k - 1] && sol.phi_k[k - 1] != 0.0);
  }
  sol.e_phi = GenMittagLeffler(pp, phi_used ? z_max : 0.0);
  sol.e_h = GenMittagLeffler(ph, sol.effective_K > 0 ? z_max : 0.0);

  const double t_alpha = std::pow(spec.T, spec.alpha);
  const double g_alpha1 = std::tgamma(spec.alpha + 1.0);
  const double rg_alpha = rgamma(spec.alpha);
  for (int k = 1; k <= sol.effective_K; ++k) {
    if (!sol.active[k - 1]) continue;
    const double z = -lambda_k(k) * t_ab;
    const EvalResult eh = sol.e_h(z);
    sol.max_est_error = std::max(sol.max_est_error, eh.est_abs_error);
    if (!(std::abs(eh.value) > 1e-300)) {
      throw AccuracyError("problem2: E_{alpha,m,m} vanishes numerically at mode " +
                          std::to_string(k));
    }
    double rhs = sol.psi_k[k - 1];
    if (sol.phi_k[k - 1] != 0.0) {
      const EvalResult ep = sol.e_phi(z);
      sol.max_est_error = std::max(sol.max_est_error, ep.est_abs_error);
      rhs -= sol.phi_k[k - 1] * std::pow(spec.T, spec.alpha - 1.0) * rg_alpha * ep.value;
    }
    sol.h_k[k - 1] = g_alpha1 / (t_alpha * eh.value) * rhs;
  }
  return sol;
}

double mode_amplitude_scaled(const Problem2Solution& sol, int k, double t) {
  check_t(sol, t);
  if (k < 1 || k > sol.effective_K || !sol.active[k - 1]) return 0.0;
  const double z = -lambda_k(k) * std::pow(t, sol.alpha + sol.beta);
  double out = 0.0;
  if (sol.phi_k[k - 1] != 0.0) {
    out += sol.phi_k[k - 1] * rgamma(sol.alpha) * sol.e_phi(z).value;
  }
  if (sol.h_k[k - 1] != 0.0) {
    out += sol.h_k[k - 1] * rgamma(sol.alpha + 1.0) * t * sol.e_h(z).value;
  }
  return out;
}

double mode_amplitude(const Problem2Solution& sol, int k, double t, double* est_error) {
  check_t(sol, t);
  if (k < 1 || k > sol.effective_K || !sol.active[k - 1]) return 0.0;
  const double z = -lambda_k(k) * std::pow(t, sol.alpha + sol.beta);
  double out = 0.0;
  if (sol.phi_k[k - 1] != 0.0) {
    if (t == 0.0) throw DomainError("problem2: u is singular at t = 0 when phi != 0");
    const EvalResult e = sol.e_phi(z);
    if (est_error) *est_error = std::max(*est_error, e.est_abs_error);
    out += sol.phi_k[k - 1] * std::pow(t, sol.alpha - 1.0) * rgamma(sol.alpha) * e.value;
  }
  if (sol.h_k[k - 1] != 0.0) {
    const EvalResult e = sol.e_h(z);
    if (est_error) *est_error = std::max(*est_error, e.est_abs_error);
    out += sol.h_k[k - 1] * rgamma(sol.alpha + 1.0) * std::pow(t, sol.alpha) * e.value;
  }
  return out;
}

std::vector<double> mode_amplitudes(const Problem2Solution& sol, double t) {
  check_t(sol, t);
  if (t == 0.0 && has_phi(sol)) {
    throw DomainError("problem2: u is singular at t = 0 when phi != 0");
  }
  std::vector<double> amp(sol.effective_K, 0.0);
  for (int k = 1; k <= sol.effective_K; ++k) {
    if (sol.active[k - 1]) amp[k - 1] = mode_amplitude(sol, k, t);
  }
  return amp;
}

double eval_u2_from_modes(const Problem2Solution& sol,
                          const std::vector<double>& amplitudes, double x) {
  check_x(x);
  double u = 0.0;
  for (int k = 1; k <= sol.effective_K; ++k) {
    if (!sol.active[k - 1]) continue;
    u += amplitudes[k - 1] * std::sin(k * M_PI * x);
  }
  return u;
}

double eval_u2(const Problem2Solution& sol, double t, double x) {
  check_x(x);
  return eval_u2_from_modes(sol, mode_amplitudes(sol, t), x);
}

double eval_u2_scaled(const Problem2Solution& sol, double t, double x) {
  check_x(x);
  double u = 0.0;
  for (int k = 1; k <= sol.effective_K; ++k) {
    if (!sol.active[k - 1]) continue;
    u += mode_amplitude_scaled(sol, k, t) * std::sin(k * M_PI * x);
  }
  return u;
}

double eval_h2(const Problem2Solution& sol, double x) {
  check_x(x);
  double h = 0.0;
  for (int k = 1; k <= sol.effective_K; ++k) h += sol.h_k[k - 1] * std::sin(k * M_PI * x);
  return h;
}

double residual_problem2(const Problem2Solution& sol,
                         const std::vector<double>& t_points,
                         const std::vector<double>& x_points, double dt) {
  if (t_points.empty() || x_points.empty()) return 0.0;
  if (!(dt > 0.0)) throw DomainError("residual_problem2: dt must be positive");
  for (double x : x_points) check_x(x);
  const double t_max = *std::max_element(t_points.begin(), t_points.end());
  check_t(sol, t_max);
  if (!(t_max > 0.0)) throw DomainError("residual_problem2: need t > 0");
  const TimeGrid grid{t_max, std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(t_max / dt)))};
  std::vector<std::size_t> idx;
  for (double t : t_points) {
    idx.push_back(std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(t / grid.dt()))));
  }
  const double a = 1.0 - sol.alpha;

  std::vector<std::vector<double>> r(idx.size(), std::vector<double>(sol.effective_K, 0.0));
  for (int k = 1; k <= sol.effective_K; ++k) {
    if (!sol.active[k - 1]) continue;
    const double lam = lambda_k(k);
    if (sol.phi_k[k - 1] == 0.0) {
      const std::vector<double> u = grid.sample([&](double t) { return mode_amplitude(sol, k, t); });
      for (std::size_t i = 0; i < idx.size(); ++i) {
        const std::size_t n = idx[i];
        r[i][k - 1] = rl_deriv_num(u, sol.alpha, grid, n) +
                      lam * std::pow(grid.node(n), sol.beta) * u[n] - sol.h_k[k - 1];
      }
      continue;
    }
    // u ~ t^(alpha-1) near 0: integrate s^(alpha-1) * (s^(1-alpha) u) exactly
    // per cell, then differentiate the integral.
    const std::vector<double> g =
        grid.sample([&](double t) { return mode_amplitude_scaled(sol, k, t); });
    auto integral = [&](std::size_t j) {
      return j == 0 ? 0.0 : rl_integral_weighted(g, a, -a, grid, j);
    };
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const std::size_t n = idx[i];
      const double h = grid.dt();
      double d;
      if (n + 1 <= grid.steps) {
        d = (integral(n + 1) - integral(n - 1)) / (2.0 * h);
      } else {
        d = (3.0 * integral(n) - 4.0 * integral(n - 1) + integral(n - 2)) / (2.0 * h);
      }
      const double t = grid.node(n);
      r[i][k - 1] = d + lam * std::pow(t, sol.beta) * g[n] * std::pow(t, -a) - sol.h_k[k - 1];
    }
  }
  double worst = 0.0;
  for (const auto& ri : r) {
    for (double x : x_points) {
      double s = 0.0;
      for (int k = 1; k <= sol.effective_K; ++k) s += ri[k - 1] * std::sin(k * M_PI * x);
      worst = std::max(worst, std::abs(s));
    }
  }
  return worst;
}

double initial_trace_problem2(const Problem2Solution& sol, double t, double x,
                              double dt) {
  check_x(x);
  check_t(sol, t);
  if (!(t > 0.0) || !(dt > 0.0)) {
    throw DomainError("initial_trace_problem2: need t > 0 and dt > 0");
  }
  const std::size_t steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(t / dt)));
  const TimeGrid grid{t, steps};
  const double a = 1.0 - sol.alpha;
  double out = 0.0;
  for (int k = 1; k <= sol.effective_K; ++k) {
    if (!sol.active[k - 1]) continue;
    const std::vector<double> g =
        grid.sample([&](double s) { return mode_amplitude_scaled(sol, k, s); });
    out += rl_integral_weighted(g, a, -a, grid, steps) * std::sin(k * M_PI * x);
  }
  return out;
}

}  // namespace fracinv
