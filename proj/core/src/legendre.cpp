#include "fracinv/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracinv/error.hpp"

namespace fracinv {
namespace {

void check_x(double x, const char* who) {
  if (!(std::abs(x) <= 1.0)) {
    throw DomainError(std::string(who) + ": |x| > 1 (x = " + std::to_string(x) + ")");
  }
}

void check_n(int n, const char* who) {
  if (n < 0) throw DomainError(std::string(who) + ": negative degree");
}

}  // namespace

LegendreTriple legendre_eval(int n, double x) {
  double p_prev = 0.0, p = 1.0, dp = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double p_next = ((2 * k - 1) * x * p - (k - 1) * p_prev) / k;
    dp = x * dp + k * p;
    p_prev = p;
    p = p_next;
  }
  return {p_prev, p, dp};
}

double legendre_p(int n, double x) {
  check_n(n, "legendre_p");
  check_x(x, "legendre_p");
  return legendre_eval(n, x).p;
}

double legendre_p_deriv(int n, double x) {
  check_n(n, "legendre_p_deriv");
  check_x(x, "legendre_p_deriv");
  return legendre_eval(n, x).dp;
}

QuadRule gauss_legendre_rule(int order) {
  if (order < 1) throw DomainError("gauss_legendre_rule: order must be >= 1");
  QuadRule rule;
  rule.order = order;
  rule.nodes.assign(order, 0.0);
  rule.weights.assign(order, 0.0);
  const int half = (order + 1) / 2;
  for (int i = 1; i <= half; ++i) {
    double x = std::cos(M_PI * (i - 0.25) / (order + 0.5));
    LegendreTriple e{};
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      e = legendre_eval(order, x);
      const double dx = e.p / e.dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw ConvergenceError("gauss_legendre_rule: Newton failed for root " +
                             std::to_string(i) + " of order " + std::to_string(order));
    }
    e = legendre_eval(order, x);
    const double w = 2.0 / ((1.0 - x * x) * e.dp * e.dp);
    rule.nodes[i - 1] = -x;
    rule.nodes[order - i] = x;
    rule.weights[i - 1] = w;
    rule.weights[order - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

int default_quadrature_order(int n_trunc) { return std::max(64, 2 * n_trunc + 16); }

FLCoeffs fl_analyze(const std::function<double(double)>& f, int n_trunc,
                    const QuadRule& rule) {
  check_n(n_trunc, "fl_analyze");
  if (rule.order < n_trunc + 2) {
    throw DomainError("fl_analyze: quadrature order must be >= N + 2");
  }
  FLCoeffs out;
  out.truncation = n_trunc;
  out.coeffs.assign(n_trunc + 1, 0.0);
  for (int q = 0; q < rule.order; ++q) {
    const double x = rule.nodes[q];
    const double fw = f(x) * rule.weights[q];
    double p_prev = 0.0, p = 1.0;
    for (int n = 0; n <= n_trunc; ++n) {
      out.coeffs[n] += fw * p;
      const double p_next = ((2 * n + 1) * x * p - n * p_prev) / (n + 1);
      p_prev = p;
      p = p_next;
    }
  }
  for (int n = 0; n <= n_trunc; ++n) out.coeffs[n] *= (2 * n + 1) / 2.0;
  return out;
}

FLCoeffs fl_analyze(const std::function<double(double)>& f, int n_trunc) {
  return fl_analyze(f, n_trunc, gauss_legendre_rule(default_quadrature_order(n_trunc)));
}

double fl_synthesize(const std::vector<double>& c, double x) {
  check_x(x, "fl_synthesize");
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 0) return 0.0;
  double b1 = 0.0, b2 = 0.0;
  for (int k = n; k >= 1; --k) {
    const double b = c[k] + (2.0 * k + 1.0) / (k + 1.0) * x * b1 -
                     (k + 1.0) / (k + 2.0) * b2;
    b2 = b1;
    b1 = b;
  }
  return c[0] + x * b1 - 0.5 * b2;
}

double fl_synthesize(const FLCoeffs& c, double x) { return fl_synthesize(c.coeffs, x); }

double fl_synthesize_deriv(const std::vector<double>& c, double x) {
  // P'_{k+1} - P'_{k-1} = (2k+1) P_k turns the derivative into a Legendre
  // series with d_k = (2k+1) (c_{k+1} + c_{k+3} + ...).
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) {
    check_x(x, "fl_synthesize_deriv");
    return 0.0;
  }
  std::vector<double> s(n + 2, 0.0);
  for (int k = n - 1; k >= 0; --k) s[k] = c[k + 1] + s[k + 2];
  std::vector<double> d(n, 0.0);
  for (int k = 0; k < n; ++k) d[k] = (2 * k + 1) * s[k];
  return fl_synthesize(d, x);
}

}  // namespace fracinv
