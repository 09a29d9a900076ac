#pragma once

// Legendre polynomials, Gauss-Legendre quadrature and Fourier-Legendre
// analysis/synthesis on [-1, 1].

#include <functional>
#include <vector>

namespace fracinv {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

struct FLCoeffs {
  std::vector<double> coeffs;  // c_0..c_N
  int truncation = 0;
};

/// P_n(x) by the three-term recurrence. Throws DomainError for |x| > 1.
double legendre_p(int n, double x);

/// P_n'(x). Throws DomainError for |x| > 1.
double legendre_p_deriv(int n, double x);

/// P_{n-1}(x), P_n(x) and P_n'(x) in one sweep, without range checks.
struct LegendreTriple {
  double p_prev;
  double p;
  double dp;
};
LegendreTriple legendre_eval(int n, double x);

/// Gauss-Legendre rule with `order` nodes on [-1, 1].
QuadRule gauss_legendre_rule(int order);

/// Default quadrature order used to analyse a truncation N.
int default_quadrature_order(int n_trunc);

/// c_n = (2n+1)/2 * integral of f P_n over [-1, 1], n = 0..N.
/// Requires rule.order >= N + 2.
FLCoeffs fl_analyze(const std::function<double(double)>& f, int n_trunc,
                    const QuadRule& rule);
FLCoeffs fl_analyze(const std::function<double(double)>& f, int n_trunc);

/// sum c_n P_n(x) by Clenshaw's recurrence.
double fl_synthesize(const FLCoeffs& c, double x);
double fl_synthesize(const std::vector<double>& c, double x);

/// d/dx sum c_n P_n(x).
double fl_synthesize_deriv(const std::vector<double>& c, double x);

}  // namespace fracinv
