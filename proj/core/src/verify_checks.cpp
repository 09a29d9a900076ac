#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fracinv/error.hpp"
#include "fracinv/fracops.hpp"
#include "fracinv/inverse1.hpp"
#include "fracinv/inverse2.hpp"
#include "fracinv/legendre.hpp"
#include "fracinv/specfun.hpp"
#include "verify_registry.hpp"

namespace fracinv::detail {
namespace {

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

CheckResult at_most(double measured, double threshold, std::string details = {}) {
  return {{}, measured <= threshold, measured, threshold, std::move(details)};
}

CheckResult at_least(double measured, double threshold, std::string details = {}) {
  return {{}, measured >= threshold, measured, threshold, std::move(details)};
}

double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

double ml(double a, double b, double z) { return mittag_leffler({a, b}, z).value; }

// Reference problems ----------------------------------------------------------

Problem1Solution problem1_example(double alpha, double w0 = 1.0, double w2 = 1.0,
                                  int N = 32) {
  Problem1Spec s;
  s.alpha = alpha;
  s.T = 1.0;
  s.v = [](double) { return 0.0; };
  s.w = [w0, w2](double x) { return w0 + w2 * (3.0 * x * x - 1.0); };
  s.N = N;
  return solve_problem1(s);
}

Problem2Solution problem2_example(double alpha, double beta,
                                  std::function<double(double)> phi,
                                  std::function<double(double)> psi, int K = 4) {
  Problem2Spec s;
  s.alpha = alpha;
  s.beta = beta;
  s.T = 1.0;
  s.phi = std::move(phi);
  s.psi = std::move(psi);
  s.K = K;
  return solve_problem2(s);
}

double sin_pi(double x) { return std::sin(M_PI * x); }
double zero(double) { return 0.0; }

// specfun ----------------------------------------------------------------------

CheckResult ml2_relation(std::mt19937_64& rng) {
  double worst = 0.0;
  for (double a : {0.3, 0.5, 0.8}) {
    for (double b : {0.5, 1.0, 1.5}) {
      for (int i = 0; i < 20; ++i) {
        const double z = uniform(rng, -50.0, 5.0);
        const double zq = z * ml(a, a + b, z);
        const double res = std::abs(ml(a, b, z) - zq - rgamma(b));
        worst = std::max(worst, res / std::max(1.0, std::abs(zq)));
      }
    }
  }
  return at_most(worst, 1e-10, "180 samples, z in [-50, 5]");
}

CheckResult kilbas_m1_reduction(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int i = 0; i < 60; ++i) {
    const double a = uniform(rng, 0.4, 1.0);
    const double n = uniform(rng, 0.1, 3.0);
    const double z = uniform(rng, -5.0, 3.0);
    const double lhs = gen_mittag_leffler({a, 1.0, n}, z).value;
    const double rhs = std::tgamma(a * n + 1.0) * ml(a, a * n + 1.0, z);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  return at_most(worst, 1e-10, "relative error, 60 samples");
}

CheckResult exp_identity(std::mt19937_64& rng) {
  double worst = 0.0;
  std::vector<double> zs = {-20.0, 0.0, 3.0};
  for (int i = 0; i < 200; ++i) zs.push_back(uniform(rng, -20.0, 3.0));
  for (double z : zs) {
    worst = std::max(worst, std::abs(ml(1.0, 1.0, z) - std::exp(z)) / std::exp(z));
  }
  return at_most(worst, 1e-12, "relative error on [-20, 3]");
}

CheckResult series_asymptotic_band(std::mt19937_64& rng) {
  double worst = 0.0;
  for (double a : {0.5, 0.6, 0.7}) {
    for (int i = 0; i < 10; ++i) {
      const double z = -uniform(rng, 10.0, 20.0);
      const double s = ml_branch::series({a, 1.0}, z).value;
      const double as = ml_branch::asymptotic({a, 1.0}, z).value;
      worst = std::max(worst, std::abs(s - as));
    }
  }
  return at_most(worst, 1e-8, "alpha in {0.5,0.6,0.7}, |z| in [10,20]");
}

// Largest |E(-x)| (1+x) over a log grid of [x_lo, x_hi].
double theorem1_constant(const MittagLeffler& e, double x_lo, double x_hi) {
  double c = 0.0;
  const int n = 1000;
  const double lo = std::log(x_lo), hi = std::log(x_hi);
  for (int i = 0; i <= n; ++i) {
    const double x = std::exp(lo + (hi - lo) * i / n);
    c = std::max(c, std::abs(e(-x).value) * (1.0 + x));
  }
  return c;
}

CheckResult theorem1_bound_stability(std::mt19937_64&) {
  double worst = 0.0;
  std::string where;
  for (double a : {0.4, 0.8, 1.5}) {
    for (double b : {0.5, 1.0, 2.0}) {
      const MittagLeffler e({a, b}, 1e5);
      const double c4 = std::max(std::abs(rgamma(b)), theorem1_constant(e, 1e-3, 1e4));
      const double c5 = std::max(c4, theorem1_constant(e, 1e4, 1e5));
      const double change = std::abs(c5 - c4) / c4;
      if (change >= worst) {
        worst = change;
        where = fmt("worst at alpha=%g beta=", a) + fmt("%g", b);
      }
    }
  }
  return at_most(worst, 0.05, where);
}

CheckResult lemma1_bound(std::mt19937_64& rng) {
  int violations = 0;
  double worst_ratio = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double a = uniform(rng, 0.1, 2.0);
    const double m = uniform(rng, 0.2, 3.0);
    const double n = (kGammaMinimumAbscissa - 1.0) / a + uniform(rng, 0.01, 2.0);
    const double z = uniform(rng, -0.99, 0.99);
    const double e = std::abs(gen_mittag_leffler({a, m, n}, z).value);
    const double bound = 1.0 / (1.0 - std::abs(z));
    worst_ratio = std::max(worst_ratio, e / bound);
    if (e > bound * (1.0 + 1e-12)) ++violations;
  }
  return at_most(violations, 0.0, fmt("max |E|/bound = %.6g", worst_ratio));
}

CheckResult derivative_fd(std::mt19937_64& rng) {
  double worst = 0.0;
  const double h = 1e-6;
  worst = std::abs(mittag_leffler_deriv({0.5, 1.0}, 1, -1.0).value -
                   (ml(0.5, 1.0, -1.0 + h) - ml(0.5, 1.0, -1.0 - h)) / (2 * h));
  for (int i = 0; i < 12; ++i) {
    const double a = uniform(rng, 0.4, 1.2);
    const double b = uniform(rng, 0.5, 2.0);
    const double z = uniform(rng, -4.0, 1.0);
    const int k = 1 + i % 3;
    const double hk = 1e-5;
    const double fd = (mittag_leffler_deriv({a, b}, k - 1, z + hk).value -
                       mittag_leffler_deriv({a, b}, k - 1, z - hk).value) /
                      (2 * hk);
    const double d = mittag_leffler_deriv({a, b}, k, z).value;
    worst = std::max(worst, std::abs(d - fd) / std::max(1.0, std::abs(d)));
  }
  return at_most(worst, 1e-7, "central differences of the (k-1)-th derivative");
}

CheckResult caputo_ode_identity(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int i = 0; i < 60; ++i) {
    const double a = (i % 3 == 0) ? 0.3 : (i % 3 == 1 ? 0.6 : 0.9);
    const double lam = uniform(rng, -5.0, -0.5);
    const double b0 = uniform(rng, -1.0, 1.0);
    const double f = uniform(rng, -1.0, 1.0);
    const double t = uniform(rng, 0.0, 2.0);
    const double y = caputo_ode_solution(a, lam, b0, f, t);
    const double alt = (b0 + f / lam) * ml(a, 1.0, lam * std::pow(t, a)) - f / lam;
    worst = std::max(worst, std::abs(y - alt) / std::max(1.0, std::abs(y)));
  }
  worst = std::max(worst, std::abs(caputo_ode_solution(0.5, -1.0, 0.7, 1.0, 0.0) - 0.7));
  worst = std::max(worst, std::abs(caputo_ode_solution(1.0, -1.0, 1.0, 0.0, 1.0) - std::exp(-1.0)));
  return at_most(worst, 1e-12);
}

CheckResult eigenfunction_caputo(std::mt19937_64&) {
  const TimeGrid grid{1.0, 10000};
  double worst = 0.0;
  for (double a : {0.5, 0.8}) {
    const MittagLeffler e({a, 1.0}, 2.0);
    const auto f = grid.sample([&](double t) { return e(-2.0 * std::pow(t, a)).value; });
    for (std::size_t n : {2500u, 5000u, 7500u, 10000u}) {
      worst = std::max(worst, std::abs(caputo_deriv_num(f, a, grid, n) + 2.0 * f[n]));
    }
  }
  return at_most(worst, 5e-4, "L1 scheme, dt = 1e-4");
}

CheckResult ml3_rl_derivative(std::mt19937_64&) {
  const double a = 0.5, b = 1.2, lam = -1.0;
  const TimeGrid grid{1.0, 10000};
  const MittagLeffler e({a, b}, 1.0);
  const auto f = grid.sample([&](double t) {
    return t == 0.0 ? 0.0 : std::pow(t, b - 1.0) * e(lam * std::pow(t, a)).value;
  });
  double worst = 0.0;
  for (std::size_t n : {2500u, 5000u, 10000u}) {
    const double t = grid.node(n);
    const double exact = std::pow(t, b - a - 1.0) * ml(a, b - a, lam * std::pow(t, a));
    worst = std::max(worst, std::abs(rl_deriv_num(f, a, grid, n) - exact));
  }
  return at_most(worst, 1e-3, "alpha=0.5, beta=1.2, lambda=-1, dt=1e-4");
}

// legendre ---------------------------------------------------------------------

CheckResult orthogonality_j(std::mt19937_64&) {
  const QuadRule q = gauss_legendre_rule(64);
  double worst = 0.0;
  for (int n = 0; n <= 30; ++n) {
    for (int m = 0; m < n; ++m) {
      double s = 0.0;
      for (int i = 0; i < q.order; ++i) {
        s += q.weights[i] * legendre_p(n, q.nodes[i]) * legendre_p(m, q.nodes[i]);
      }
      worst = std::max(worst, std::abs(s));
    }
  }
  return at_most(worst, 1e-12, "n != m <= 30, 64-point rule");
}

CheckResult norm_k(std::mt19937_64&) {
  const QuadRule q = gauss_legendre_rule(64);
  double worst = 0.0;
  for (int n = 0; n <= 30; ++n) {
    double s = 0.0;
    for (int i = 0; i < q.order; ++i) {
      const double p = legendre_p(n, q.nodes[i]);
      s += q.weights[i] * p * p;
    }
    worst = std::max(worst, std::abs(s - 2.0 / (2 * n + 1)));
  }
  return at_most(worst, 1e-12);
}

CheckResult bound_i(std::mt19937_64&) {
  double worst = 0.0;
  for (int n = 0; n <= 100; ++n) {
    for (int i = 0; i <= 1000; ++i) {
      worst = std::max(worst, std::abs(legendre_p(n, -1.0 + 2.0 * i / 1000.0)));
    }
  }
  return at_most(worst, 1.0 + 1e-12, "max |P_n| over 1001 points, n <= 100");
}

// P_n, P_n', P_n'' from the recurrences for P and its derivatives.
void legendre_with_second(int n, double x, double& p, double& dp, double& d2p) {
  double pp = 0.0, dpp = 0.0;
  p = 1.0;
  dp = 0.0;
  d2p = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double p_next = ((2 * k - 1) * x * p - (k - 1) * pp) / k;
    const double dp_next = x * dp + k * p;
    const double d2p_next = x * d2p + (k + 1) * dp;
    pp = p;
    dpp = dp;
    p = p_next;
    dp = dp_next;
    d2p = d2p_next;
  }
  (void)dpp;
}

CheckResult ode_identity_d(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = uniform(rng, -0.999, 0.999);
    for (int n = 0; n <= 30; ++n) {
      double p, dp, d2p;
      legendre_with_second(n, x, p, dp, d2p);
      const double lhs = -2.0 * x * dp + (1.0 - x * x) * d2p + n * (n + 1.0) * p;
      worst = std::max(worst, std::abs(lhs));
    }
  }
  return at_most(worst, 1e-9);
}

CheckResult identity_a(std::mt19937_64& rng) {
  // P_n' = x P_{n-1}' + n P_{n-1}, checked against (1-x^2) P_n' = n (P_{n-1} - x P_n).
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = uniform(rng, -0.95, 0.95);
    for (int n = 1; n <= 30; ++n) {
      const double rec = x * legendre_p_deriv(n - 1, x) + n * legendre_p(n - 1, x);
      const double alt = n * (legendre_p(n - 1, x) - x * legendre_p(n, x)) / (1.0 - x * x);
      worst = std::max(worst, std::abs(rec - alt) / std::max(1.0, std::abs(alt)));
    }
  }
  return at_most(worst, 1e-11, "sign-corrected form");
}

CheckResult identity_b(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = uniform(rng, -1.0, 1.0);
    for (int n = 1; n <= 30; ++n) {
      const double rhs = x * legendre_p(n - 1, x) + (x * x - 1.0) / n * legendre_p_deriv(n - 1, x);
      worst = std::max(worst, std::abs(legendre_p(n, x) - rhs));
    }
  }
  return at_most(worst, 1e-11);
}

CheckResult identity_c(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double x = uniform(rng, -1.0, 1.0);
    for (int n = 1; n <= 30; ++n) {
      const double lhs = legendre_p_deriv(n + 1, x) - legendre_p_deriv(n - 1, x);
      worst = std::max(worst, std::abs(lhs - (2 * n + 1) * legendre_p(n, x)));
    }
  }
  return at_most(worst, 1e-11);
}

CheckResult recurrence_e(std::mt19937_64& rng) {
  // Against P_n = 2^-n sum_k C(n,k)^2 (x-1)^(n-k) (x+1)^k, summed in long
  // double since the terms cancel heavily.
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    const long double x = uniform(rng, -1.0, 1.0);
    for (int n = 0; n <= 20; ++n) {
      long double s = 0.0L, c = 1.0L;
      for (int k = 0; k <= n; ++k) {
        s += c * c * std::pow(x - 1.0L, n - k) * std::pow(x + 1.0L, k);
        c = c * (n - k) / (k + 1);
      }
      const double ref = static_cast<double>(std::ldexp(s, -n));
      worst = std::max(worst, std::abs(legendre_p(n, static_cast<double>(x)) - ref));
    }
  }
  return at_most(worst, 1e-12, "n <= 20 against the explicit sum");
}

CheckResult endpoint_values_f(std::mt19937_64&) {
  double worst = 0.0;
  for (int n = 0; n <= 50; ++n) {
    worst = std::max(worst, std::abs(legendre_p(n, 1.0) - 1.0));
    worst = std::max(worst, std::abs(legendre_p(n, -1.0) - (n % 2 ? -1.0 : 1.0)));
  }
  return at_most(worst, 1e-14);
}

double q_form(int n, int j, double x) {
  const double d = legendre_p_deriv(j, x);
  const double p = legendre_p(j, x);
  return (1.0 - x * x) / (static_cast<double>(n) * n) * d * d + p * p;
}

CheckResult identity_g(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = uniform(rng, -1.0, 1.0);
    for (int n = 1; n <= 30; ++n) {
      worst = std::max(worst, std::abs(q_form(n, n, x) - q_form(n, n - 1, x)));
    }
  }
  return at_most(worst, 1e-12, "coefficient (1-x^2)/n^2");
}

CheckResult identity_h(std::mt19937_64&) {
  double worst = 0.0;
  for (int n = 1; n <= 100; ++n) {
    for (int i = 0; i <= 1000; ++i) worst = std::max(worst, q_form(n, n, -1.0 + 2.0 * i / 1000.0));
  }
  return at_most(worst, 1.0 + 1e-12, "coefficient (1-x^2)/n^2, n <= 100");
}

CheckResult expansion_l(std::mt19937_64&) {
  double worst = 0.0;
  for (int p = 0; p <= 12; ++p) {
    const FLCoeffs c = fl_analyze([p](double x) { return std::pow(x, p); }, 16);
    for (int n = p + 1; n <= 16; ++n) worst = std::max(worst, std::abs(c.coeffs[n]));
    for (int i = 0; i <= 20; ++i) {
      const double x = -1.0 + i / 10.0;
      worst = std::max(worst, std::abs(fl_synthesize(c, x) - std::pow(x, p)));
    }
  }
  const FLCoeffs c3 = fl_analyze([](double x) { return x * x * x; }, 5);
  worst = std::max(worst, std::abs(c3.coeffs[1] - 0.6));
  worst = std::max(worst, std::abs(c3.coeffs[3] - 0.4));
  return at_most(worst, 1e-12, "x^p in P_0..P_p for p <= 12");
}

CheckResult quadrature_exactness(std::mt19937_64&) {
  double worst = 0.0;
  for (int q = 1; q <= 40; ++q) {
    const QuadRule r = gauss_legendre_rule(q);
    worst = std::max(worst, std::abs(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) - 2.0));
    for (int j = 0; j <= 2 * q - 1; ++j) {
      double s = 0.0;
      for (int i = 0; i < q; ++i) s += r.weights[i] * std::pow(r.nodes[i], j);
      const double exact = (j % 2) ? 0.0 : 2.0 / (j + 1);
      worst = std::max(worst, std::abs(s - exact));
    }
  }
  return at_most(worst, 1e-13, "orders 1..40, monomials up to 2Q-1");
}

CheckResult clenshaw_round_trip(std::mt19937_64& rng) {
  double worst = 0.0;
  const int N = 12;
  std::vector<double> a(N + 1);
  for (double& v : a) v = uniform(rng, -1.0, 1.0);
  auto poly = [&](double x) {
    double s = 0.0;
    for (int k = N; k >= 0; --k) s = s * x + a[k];
    return s;
  };
  const FLCoeffs c = fl_analyze(poly, N);
  for (int i = 0; i < 50; ++i) {
    const double x = uniform(rng, -1.0, 1.0);
    worst = std::max(worst, std::abs(fl_synthesize(c, x) - poly(x)));
    double direct = 0.0;
    for (int n = 0; n <= N; ++n) direct += c.coeffs[n] * legendre_p(n, x);
    worst = std::max(worst, std::abs(fl_synthesize(c, x) - direct));
  }
  return at_most(worst, 1e-10, "degree-12 polynomial, 50 points");
}

// fracops ----------------------------------------------------------------------

CheckResult rl_integral_closed_forms(std::mt19937_64&) {
  const TimeGrid grid{1.0, 1000};
  const auto one = grid.sample([](double) { return 1.0; });
  const auto lin = grid.sample([](double t) { return t; });
  double worst = 0.0;
  for (double a : {0.3, 0.6, 1.0}) {
    for (std::size_t n : {500u, 1000u}) {
      const double t = grid.node(n);
      worst = std::max(worst, std::abs(rl_integral_num(one, a, grid, n) -
                                       std::pow(t, a) * rgamma(a + 1.0)));
      worst = std::max(worst, std::abs(rl_integral_num(lin, a, grid, n) -
                                       std::pow(t, a + 1.0) * rgamma(a + 2.0)));
    }
  }
  return at_most(worst, 1e-6, "f = 1 and f = s, dt = 1e-3");
}

CheckResult caputo_closed_forms(std::mt19937_64&) {
  const TimeGrid grid{1.0, 1000};
  const auto c = grid.sample([](double) { return 3.5; });
  const auto lin = grid.sample([](double t) { return t; });
  const double a = 0.6;
  double worst = 0.0;
  for (std::size_t n : {1u, 250u, 1000u}) {
    const double t = grid.node(n);
    worst = std::max(worst, std::abs(caputo_deriv_num(c, a, grid, n)));
    worst = std::max(worst, std::abs(caputo_deriv_num(lin, a, grid, n) -
                                     std::pow(t, 1.0 - a) * rgamma(2.0 - a)));
  }
  return at_most(worst, 1e-5, "f = const and f = t, alpha = 0.6, dt = 1e-3");
}

CheckResult integral_after_caputo(std::mt19937_64&) {
  const TimeGrid grid{1.0, 1000};
  const double a = 0.6;
  const auto f = grid.sample([](double t) { return std::sin(t) + t * t; });
  std::vector<double> d(grid.steps + 1, 0.0);
  for (std::size_t n = 1; n <= grid.steps; ++n) d[n] = caputo_deriv_num(f, a, grid, n);
  double worst = 0.0;
  for (std::size_t n : {250u, 500u, 1000u}) {
    worst = std::max(worst, std::abs(rl_integral_num(d, a, grid, n) - (f[n] - f[0])));
  }
  return at_most(worst, 1e-4, "I^a D_C^a f = f - f(0), f = sin t + t^2, dt = 1e-3");
}

CheckResult rlcr_relation(std::mt19937_64&) {
  const TimeGrid grid{1.0, 10000};
  const auto f = grid.sample([](double t) { return std::cos(t) + t; });
  double worst = 0.0;
  for (double a : {0.3, 0.6}) {
    for (std::size_t n : {2500u, 5000u, 10000u}) {
      const double t = grid.node(n);
      const double rl = rl_deriv_num(f, a, grid, n, RLMethod::DifferentiateIntegral);
      const double rel = caputo_deriv_num(f, a, grid, n) + f[0] * std::pow(t, -a) * rgamma(1.0 - a);
      worst = std::max(worst, std::abs(rl - rel));
    }
  }
  return at_most(worst, 1e-3, "differentiated integral vs Caputo + f(0) t^-a / Gamma(1-a)");
}

CheckResult grid_refinement_order(std::mt19937_64&) {
  double worst = std::numeric_limits<double>::infinity();
  std::string where;
  for (double a : {0.3, 0.5, 0.8}) {
    const double exact = 2.0 * rgamma(3.0 - a);  // D_C^a t^2 at t = 1
    double err[2];
    for (int i = 0; i < 2; ++i) {
      const TimeGrid grid{1.0, i == 0 ? 100u : 200u};
      const auto f = grid.sample([](double t) { return t * t; });
      err[i] = std::abs(caputo_deriv_num(f, a, grid, grid.steps) - exact);
    }
    const double ratio = err[0] / err[1];
    if (ratio < worst) {
      worst = ratio;
      where = fmt("min at alpha=%g", a);
    }
  }
  return at_least(worst, std::pow(2.0, 1.2), where + ", f = t^2, dt 1e-2 -> 5e-3");
}

// problem1 ---------------------------------------------------------------------

CheckResult p1_closed_form(std::mt19937_64& rng) {
  double worst = 0.0;
  for (double a : {0.3, 0.6, 0.9}) {
    const Problem1Solution sol = problem1_example(a);
    const double den = 1.0 - ml(a, 1.0, -6.0);
    for (int i = 0; i < 500; ++i) {
      const double t = uniform(rng, 0.0, 1.0);
      const double x = uniform(rng, -1.0, 1.0);
      const double p2 = 3.0 * x * x - 1.0;
      const double u = std::pow(t, a) + (1.0 - ml(a, 1.0, -6.0 * std::pow(t, a))) / den * p2;
      const double h = std::tgamma(a + 1.0) + 6.0 * p2 / den;
      worst = std::max(worst, std::abs(eval_U(sol, t, x) - u));
      worst = std::max(worst, std::abs(eval_h(sol, x) - h));
    }
  }
  return at_most(worst, 1e-10, "alpha in {0.3,0.6,0.9}, 500 points each");
}

CheckResult p1_interpolation(std::mt19937_64& rng) {
  Problem1Spec s;
  s.alpha = 0.7;
  s.T = 2.0;
  s.v = [](double x) { return 0.5 * x * x - 0.2 * x * x * x + 0.1; };
  s.w = [](double x) { return 1.0 + x - std::pow(x, 4) + 0.3 * std::pow(x, 7); };
  s.N = 10;
  const Problem1Solution sol = solve_problem1(s);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = uniform(rng, -1.0, 1.0);
    worst = std::max(worst, std::abs(eval_U(sol, 0.0, x) - s.v(x)));
    worst = std::max(worst, std::abs(eval_U(sol, s.T, x) - s.w(x)));
  }
  return at_most(worst, 1e-9, "U(0,x) = v(x), U(T,x) = w(x), degree <= 7 data");
}

CheckResult p1_boundary_finiteness(std::mt19937_64&) {
  Problem1Spec s;
  s.alpha = 0.6;
  s.v = [](double x) { return std::sin(M_PI * x) * (1.0 - x * x); };
  s.w = [](double x) { return std::exp(x); };
  const Problem1Solution sol = solve_problem1(s);
  int bad = 0;
  for (double x : {-1.0, -1.0 + 1e-9, 1.0 - 1e-9, 1.0}) {
    for (double t : {0.0, 0.3, 1.0}) {
      if (!std::isfinite(eval_U(sol, t, x)) || !std::isfinite(eval_U_x(sol, t, x))) ++bad;
    }
    if (!std::isfinite(eval_h(sol, x))) ++bad;
  }
  return at_most(bad, 0.0, "non-finite values at x in {+-1, +-(1-1e-9)}");
}

const std::function<double(double)> kDecayV = [](double x) {
  return std::sin(M_PI * x) * (1.0 - x * x);
};

CheckResult p7_decay_slope(std::mt19937_64&) {
  const FLCoeffs c = fl_analyze(kDecayV, 40);
  // v is odd; the even coefficients vanish identically.
  std::vector<double> lx, ly;
  for (int n = 9; n <= 40; n += 2) {
    const double a = std::abs(c.coeffs[n]);
    lx.push_back(std::log(n));
    ly.push_back(std::log(std::max(a, 1e-300)));
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = sxy / sxx;
  return {{}, slope <= -3.4, slope, -3.4, "log-log slope of |v_n|, odd n in [8, 40]"};
}

CheckResult p1_first_pass_estimate(std::mt19937_64&) {
  const QuadRule q = gauss_legendre_rule(128);
  double dv2 = 0.0;
  for (int i = 0; i < q.order; ++i) {
    const double x = q.nodes[i];
    const double d = M_PI * std::cos(M_PI * x) * (1.0 - x * x) - 2.0 * x * std::sin(M_PI * x);
    dv2 += q.weights[i] * d * d;
  }
  const double norm = std::sqrt(dv2);
  const FLCoeffs c = fl_analyze(kDecayV, 40);
  double worst = 0.0;
  for (int n = 1; n <= 40; ++n) {
    worst = std::max(worst, std::abs(c.coeffs[n]) / (std::sqrt(2.0) * norm / std::sqrt(2.0 * n - 1.0)));
  }
  return at_most(worst, 1.0, "max |v_n| / (sqrt2 |v'| / sqrt(2n-1))");
}

CheckResult figure1_monotone_increasing(std::mt19937_64&) {
  const Problem1Solution sol = problem1_example(0.6);
  double prev = -std::numeric_limits<double>::infinity();
  double worst_drop = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const double u = eval_U(sol, i / 10.0, 0.5);
    worst_drop = std::max(worst_drop, prev - u);
    prev = u;
  }
  return at_most(worst_drop, 0.0, "U(t, 0.5), t = 0, 0.1, ..., 1");
}

CheckResult figure2_decreasing_in_alpha(std::mt19937_64&) {
  double prev = std::numeric_limits<double>::infinity();
  double worst_rise = -std::numeric_limits<double>::infinity();
  std::string vals;
  for (double a : {0.3, 0.5, 0.7, 0.9}) {
    const double u = eval_U(problem1_example(a), 0.5, 0.5);
    if (std::isfinite(prev)) worst_rise = std::max(worst_rise, u - prev);
    prev = u;
    vals += fmt("%.7g ", u);
  }
  return {{}, worst_rise < 0.0, worst_rise, 0.0, "U(0.5,0.5) for alpha 0.3..0.9: " + vals};
}

CheckResult p1_zero_data(std::mt19937_64& rng) {
  Problem1Spec s;
  s.alpha = 0.5;
  s.v = zero;
  s.w = zero;
  const Problem1Solution sol = solve_problem1(s);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = uniform(rng, 0.0, 1.0);
    const double x = uniform(rng, -1.0, 1.0);
    worst = std::max({worst, std::abs(eval_U(sol, t, x)), std::abs(eval_h(sol, x))});
  }
  return at_most(worst, 1e-14);
}

CheckResult p1_steady_state(std::mt19937_64& rng) {
  Problem1Spec s;
  s.alpha = 0.4;
  s.v = [](double x) { return 1.0 + x * x - x * x * x; };
  s.w = s.v;
  const Problem1Solution sol = solve_problem1(s);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = uniform(rng, 0.0, 1.0);
    const double x = uniform(rng, -1.0, 1.0);
    const double h = -2.0 + 6.0 * x + 6.0 * x * x - 12.0 * x * x * x;
    worst = std::max(worst, std::abs(eval_U(sol, t, x) - s.v(x)));
    worst = std::max(worst, std::abs(eval_h(sol, x) - h));
  }
  return at_most(worst, 1e-10, "v = w: U = v, h = -[(1-x^2)v']'");
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  return out;
}

CheckResult p1_pde_residual(std::mt19937_64&) {
  const Problem1Solution sol = problem1_example(0.6, 1.0, 1.0, 2);
  const auto ts = linspace(0.1, 1.0, 10);
  const auto xs = linspace(-1.0, 1.0, 11);
  const double r1 = residual_problem1(sol, ts, xs, 1e-4);
  const double r2 = residual_problem1(sol, ts, xs, 5e-5);
  const double ratio = r1 / r2;
  CheckResult r = at_most(r1, 5e-3, fmt("dt=1e-4: %.3g, dt=5e-5: ", r1) + fmt("%.3g, ratio ", r2) +
                                      fmt("%.3f", ratio));
  r.passed = r.passed && ratio >= 2.0;
  return r;
}

// problem2 ---------------------------------------------------------------------

CheckResult p2_closed_form(std::mt19937_64& rng) {
  const double a = 0.5, b = 0.5;
  const Problem2Solution sol = problem2_example(a, b, zero, sin_pi, 1);
  const GenMLParams p{a, 1.0 + b / a, 1.0 + b / a};
  const double den = gen_mittag_leffler(p, -M_PI * M_PI).value;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double t = uniform(rng, 1e-3, 1.0);
    const double x = uniform(rng, 0.0, 1.0);
    const double num = std::pow(t, a) * gen_mittag_leffler(p, -M_PI * M_PI * std::pow(t, a + b)).value;
    worst = std::max(worst, std::abs(eval_u2(sol, t, x) - num / den * sin_pi(x)));
    worst = std::max(worst, std::abs(eval_h2(sol, x) - std::tgamma(a + 1.0) / den * sin_pi(x)));
  }
  return at_most(worst, 1e-9, "alpha = beta = 0.5, 200 points");
}

CheckResult p2_overdetermination(std::mt19937_64& rng) {
  double worst = 0.0;
  const auto two_mode = [](double x) { return sin_pi(x) - 0.3 * std::sin(2 * M_PI * x); };
  const Problem2Solution s1 = problem2_example(0.5, 0.5, zero, sin_pi, 1);
  const Problem2Solution s2 = problem2_example(0.7, 0.3, zero, two_mode, 4);
  for (int i = 0; i < 50; ++i) {
    const double x = uniform(rng, 0.0, 1.0);
    worst = std::max(worst, std::abs(eval_u2(s1, 1.0, x) - sin_pi(x)));
    worst = std::max(worst, std::abs(eval_u2(s2, 1.0, x) - two_mode(x)));
  }
  return at_most(worst, 1e-9, "u(T, x) = psi(x)");
}

CheckResult p2_self_consistency(std::mt19937_64&) {
  const Problem2Solution sol = problem2_example(
      0.7, 0.3, [](double x) { return 0.5 * sin_pi(x); },
      [](double x) { return sin_pi(x) - 0.3 * std::sin(2 * M_PI * x); }, 4);
  double worst = 0.0;
  for (int k = 1; k <= sol.effective_K; ++k) {
    if (!sol.active[k - 1]) continue;
    worst = std::max(worst, std::abs(mode_amplitude(sol, k, sol.T) - sol.psi_k[k - 1]));
  }
  return at_most(worst, 1e-9, "mode amplitudes at t = T against psi_k, phi != 0");
}

CheckResult p2_mode_decoupling(std::mt19937_64& rng) {
  const Problem2Solution sol =
      problem2_example(0.7, 0.3, zero, [](double x) { return std::sin(2 * M_PI * x); }, 6);
  double worst = 0.0;
  for (int k = 1; k <= sol.K; ++k) {
    if (k != 2) worst = std::max(worst, std::abs(sol.h_k[k - 1]) / std::abs(sol.h_k[1]));
  }
  for (int i = 0; i < 50; ++i) {
    const double x = uniform(rng, 0.0, 1.0);
    const double s2 = std::sin(2 * M_PI * x);
    worst = std::max(worst, std::abs(eval_h2(sol, x) - sol.h_k[1] * s2) / std::abs(sol.h_k[1]));
    const double t = uniform(rng, 0.05, 1.0);
    worst = std::max(worst, std::abs(eval_u2(sol, t, x) - mode_amplitude(sol, 2, t) * s2));
  }
  return at_most(worst, 1e-12, "psi = sin 2 pi x");
}

CheckResult p2_beta0_consistency(std::mt19937_64& rng) {
  const double a = 0.6;
  const double lam = M_PI * M_PI;
  const Problem2Solution sol =
      problem2_example(a, 0.0, sin_pi, [](double x) { return 0.8 * sin_pi(x); }, 1);
  // Classical RL solution: u = phi t^(a-1) E_{a,a}(-lam t^a) + h t^a E_{a,a+1}(-lam t^a).
  const double h = (0.8 - ml(a, a, -lam)) / ml(a, a + 1.0, -lam);
  double worst = std::abs(sol.h_k[0] - h) / std::abs(h);
  for (int i = 0; i < 40; ++i) {
    const double t = uniform(rng, 0.05, 1.0);
    const double u = std::pow(t, a - 1.0) * ml(a, a, -lam * std::pow(t, a)) +
                     h * std::pow(t, a) * ml(a, a + 1.0, -lam * std::pow(t, a));
    worst = std::max(worst, std::abs(mode_amplitude(sol, 1, t) - u) / std::max(1.0, std::abs(u)));
  }
  return at_most(worst, 1e-8, "beta = 0 against E_{a,a}, E_{a,a+1}");
}

CheckResult p2_validity_condition(std::mt19937_64&) {
  int wrong = 0;
  auto rejects = [](Problem2Spec s) {
    try {
      validate(s);
      return false;
    } catch (const DomainError&) {
      return true;
    }
  };
  Problem2Spec ok;
  ok.phi = zero;
  ok.psi = sin_pi;
  for (double b : {0.0, 0.5, 3.0}) {
    Problem2Spec s = ok;
    s.beta = b;
    if (rejects(s)) ++wrong;
  }
  Problem2Spec neg = ok;
  neg.beta = -0.1;
  if (!rejects(neg)) ++wrong;
  Problem2Spec incompatible = ok;
  incompatible.psi = [](double x) { return 1.0 + x; };
  if (!rejects(incompatible)) ++wrong;
  return at_most(wrong, 0.0, "beta >= 0 and zero boundary data enforced");
}

CheckResult figure3_monotone_decreasing(std::mt19937_64&) {
  const Problem2Solution sol = problem2_example(0.5, 0.5, zero, sin_pi, 1);
  double prev = std::numeric_limits<double>::infinity();
  double worst_rise = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double u = eval_u2(sol, i / 10.0, 0.5);
    worst_rise = std::max(worst_rise, u - prev);
    prev = u;
  }
  return at_most(worst_rise, 0.0, "u(t, 0.5), t = 0.1, ..., 1");
}

CheckResult figure4_increasing_in_alpha(std::mt19937_64&) {
  double prev = -std::numeric_limits<double>::infinity();
  double worst_drop = -std::numeric_limits<double>::infinity();
  std::string vals;
  for (double a : {0.3, 0.5, 0.7, 0.9}) {
    const double u = eval_u2(problem2_example(a, 0.5, zero, sin_pi, 1), 0.5, 0.5);
    if (std::isfinite(prev)) worst_drop = std::max(worst_drop, prev - u);
    prev = u;
    vals += fmt("%.7g ", u);
  }
  return {{}, worst_drop < 0.0, worst_drop, 0.0, "u(0.5,0.5) for alpha 0.3..0.9: " + vals};
}

CheckResult p2_zero_data(std::mt19937_64& rng) {
  const Problem2Solution sol = problem2_example(0.5, 0.5, zero, zero, 8);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = uniform(rng, 0.0, 1.0);
    const double x = uniform(rng, 0.0, 1.0);
    worst = std::max({worst, std::abs(eval_u2(sol, t, x)), std::abs(eval_h2(sol, x))});
  }
  return at_most(worst, 1e-14);
}

CheckResult p2_pde_residual(std::mt19937_64&) {
  const Problem2Solution sol = problem2_example(0.5, 0.5, zero, sin_pi, 1);
  const auto ts = linspace(0.1, 1.0, 10);
  const auto xs = linspace(0.0, 1.0, 11);
  const double r1 = residual_problem2(sol, ts, xs, 1e-4);
  const double r2 = residual_problem2(sol, ts, xs, 5e-5);
  const double ratio = r1 / r2;
  CheckResult r = at_most(r1, 1e-2, fmt("dt=1e-4: %.3g, dt=5e-5: ", r1) + fmt("%.3g, ratio ", r2) +
                                      fmt("%.3f", ratio));
  r.passed = r.passed && ratio >= 2.0;
  return r;
}

CheckResult p2_initial_trace(std::mt19937_64&) {
  const Problem2Solution sol = problem2_example(0.6, 0.4, sin_pi, sin_pi, 1);
  const double x = 0.5;
  const double i1 = initial_trace_problem2(sol, 1e-4, x, 1e-6);
  const double i2 = initial_trace_problem2(sol, 2e-4, x, 1e-6);
  const double extrapolated = 2.0 * i1 - i2;
  return at_most(std::abs(extrapolated - sin_pi(x)), 1e-2,
                 fmt("I^(1-a)u at t=1e-4: %.6g, extrapolated %.6g", i1, extrapolated));
}

}  // namespace

const std::vector<CheckEntry>& check_registry() {
  static const std::vector<CheckEntry> reg = {
      {"specfun", "ml2_relation", ml2_relation},
      {"specfun", "kilbas_m1_reduction", kilbas_m1_reduction},
      {"specfun", "exp_identity", exp_identity},
      {"specfun", "series_asymptotic_band", series_asymptotic_band},
      {"specfun", "theorem1_bound_stability", theorem1_bound_stability},
      {"specfun", "lemma1_bound", lemma1_bound},
      {"specfun", "derivative_fd", derivative_fd},
      {"specfun", "caputo_ode_identity", caputo_ode_identity},
      {"specfun", "eigenfunction_caputo", eigenfunction_caputo},
      {"specfun", "ml3_rl_derivative", ml3_rl_derivative},
      {"legendre", "orthogonality_j", orthogonality_j},
      {"legendre", "norm_k", norm_k},
      {"legendre", "bound_i", bound_i},
      {"legendre", "ode_identity_d", ode_identity_d},
      {"legendre", "identity_a", identity_a},
      {"legendre", "identity_b", identity_b},
      {"legendre", "identity_c", identity_c},
      {"legendre", "recurrence_e", recurrence_e},
      {"legendre", "endpoint_values_f", endpoint_values_f},
      {"legendre", "identity_g", identity_g},
      {"legendre", "identity_h", identity_h},
      {"legendre", "expansion_l", expansion_l},
      {"legendre", "quadrature_exactness", quadrature_exactness},
      {"legendre", "clenshaw_round_trip", clenshaw_round_trip},
      {"fracops", "rl_integral_closed_forms", rl_integral_closed_forms},
      {"fracops", "caputo_closed_forms", caputo_closed_forms},
      {"fracops", "integral_after_caputo", integral_after_caputo},
      {"fracops", "rlcr_relation", rlcr_relation},
      {"fracops", "grid_refinement_order", grid_refinement_order},
      {"problem1", "p1_closed_form", p1_closed_form},
      {"problem1", "p1_interpolation", p1_interpolation},
      {"problem1", "p1_boundary_finiteness", p1_boundary_finiteness},
      {"problem1", "p7_decay_slope", p7_decay_slope},
      {"problem1", "p1_first_pass_estimate", p1_first_pass_estimate},
      {"problem1", "figure1_monotone_increasing", figure1_monotone_increasing},
      {"problem1", "figure2_decreasing_in_alpha", figure2_decreasing_in_alpha},
      {"problem1", "p1_zero_data", p1_zero_data},
      {"problem1", "p1_steady_state", p1_steady_state},
      {"problem1", "p1_pde_residual", p1_pde_residual},
      {"problem2", "p2_closed_form", p2_closed_form},
      {"problem2", "p2_overdetermination", p2_overdetermination},
      {"problem2", "p2_self_consistency", p2_self_consistency},
      {"problem2", "p2_mode_decoupling", p2_mode_decoupling},
      {"problem2", "p2_beta0_consistency", p2_beta0_consistency},
      {"problem2", "p2_validity_condition", p2_validity_condition},
      {"problem2", "figure3_monotone_decreasing", figure3_monotone_decreasing},
      {"problem2", "figure4_increasing_in_alpha", figure4_increasing_in_alpha},
      {"problem2", "p2_zero_data", p2_zero_data},
      {"problem2", "p2_pde_residual", p2_pde_residual},
      {"problem2", "p2_initial_trace", p2_initial_trace},
  };
  return reg;
}

}  // namespace fracinv::detail
