#include <gtest/gtest.h>

#include <cmath>

#include "fracinv/error.hpp"
#include "fracinv/specfun.hpp"
#include "oracle_values.hpp"

using namespace fracinv;

namespace {

// Accuracy band of the evaluators: tol * max(|v|, 1/(1+|z|)^2).
double band(double v, double z) {
  return std::max(std::abs(v), 1.0 / ((1.0 + std::abs(z)) * (1.0 + std::abs(z))));
}

}  // namespace

TEST(Gamma, MatchesOracle) {
  for (const auto& o : oracle::kGamma) {
    EXPECT_NEAR(gamma_fn(o.x), o.value, 1e-14 * std::abs(o.value)) << "x=" << o.x;
  }
  for (const auto& o : oracle::kLogGamma) {
    EXPECT_NEAR(log_abs_gamma(o.x), o.value, 1e-14 * std::max(1.0, std::abs(o.value)))
        << "x=" << o.x;
  }
}

TEST(Gamma, PolesAndReciprocal) {
  EXPECT_THROW(gamma_fn(0.0), PoleError);
  EXPECT_THROW(gamma_fn(-3.0), PoleError);
  EXPECT_THROW(gamma_fn(std::nan("")), DomainError);
  EXPECT_EQ(rgamma(-2.0), 0.0);
  EXPECT_EQ(rgamma(0.0), 0.0);
  EXPECT_NEAR(rgamma(0.5), 1.0 / std::sqrt(M_PI), 1e-16);
  EXPECT_NEAR(gamma_fn(kGammaMinimumAbscissa), 0.8856031944108887, 1e-15);
}

TEST(MittagLeffler, MatchesOracle) {
  for (const auto& o : oracle::kMittagLeffler) {
    const EvalResult r = mittag_leffler({o.alpha, o.beta}, o.z);
    EXPECT_NEAR(r.value, o.value, 1e-12 * band(o.value, o.z))
        << "alpha=" << o.alpha << " beta=" << o.beta << " z=" << o.z;
    EXPECT_LE(r.est_abs_error, kDefaultTol * band(r.value, o.z));
  }
}

TEST(MittagLeffler, EvaluatorAgreesWithFreeFunction) {
  for (const auto& o : oracle::kMittagLeffler) {
    const MittagLeffler e({o.alpha, o.beta}, std::abs(o.z));
    EXPECT_NEAR(e(o.z).value, o.value, 1e-12 * band(o.value, o.z)) << "z=" << o.z;
  }
}

TEST(MittagLeffler, DerivativesMatchOracle) {
  for (const auto& o : oracle::kMittagLefflerDeriv) {
    const EvalResult r = mittag_leffler_deriv({o.alpha, o.beta}, o.order, o.z);
    EXPECT_NEAR(r.value, o.value, 1e-11 * std::abs(o.value)) << "order=" << o.order;
  }
}

TEST(MittagLeffler, ElementaryCases) {
  for (double z : {-20.0, -3.0, 0.0, 1.5, 3.0}) {
    EXPECT_NEAR(mittag_leffler({1.0, 1.0}, z).value, std::exp(z), 1e-13 * std::exp(z));
  }
  EXPECT_NEAR(mittag_leffler({2.0, 1.0}, -4.0).value, std::cos(2.0), 1e-14);
  EXPECT_NEAR(mittag_leffler({2.0, 2.0}, -4.0).value, std::sin(2.0) / 2.0, 1e-14);
  EXPECT_EQ(mittag_leffler({0.7, 1.0}, 0.0).value, 1.0);
}

TEST(MittagLeffler, BranchesAgreeInOverlap) {
  for (double z : {-12.0, -15.0, -18.0}) {
    const EvalResult s = ml_branch::series({0.6, 1.0}, z);
    const EvalResult a = ml_branch::asymptotic({0.6, 1.0}, z);
    EXPECT_NEAR(s.value, a.value, 1e-10) << "z=" << z;
  }
}

TEST(MittagLeffler, RejectsBadParameters) {
  EXPECT_THROW(mittag_leffler({0.0, 1.0}, -1.0), DomainError);
  EXPECT_THROW(mittag_leffler({-1.0, 1.0}, -1.0), DomainError);
  EXPECT_THROW(mittag_leffler({0.5, std::nan("")}, -1.0), DomainError);
  EXPECT_THROW(mittag_leffler_deriv({0.5, 1.0}, 5, -1.0), DomainError);
}

TEST(GenMittagLeffler, MatchesOracle) {
  for (const auto& o : oracle::kGenMittagLeffler) {
    const EvalResult r = gen_mittag_leffler({o.alpha, o.m, o.n}, o.z);
    EXPECT_NEAR(r.value, o.value, 1e-12 * band(o.value, o.z))
        << "alpha=" << o.alpha << " m=" << o.m << " n=" << o.n;
  }
}

TEST(GenMittagLeffler, TimeDegenerateDenominators) {
  for (const auto& o : oracle::kP2Denominator) {
    const double m = 1.0 + 0.5 / o.alpha;
    const double z = -M_PI * M_PI;
    const GenMittagLeffler e({o.alpha, m, m}, -z);
    EXPECT_NEAR(e(z).value, o.value, 1e-13) << "alpha=" << o.alpha;
  }
}

TEST(GenMittagLeffler, ReducesToTwoParameterAtMEqualsOne) {
  for (double a : {0.3, 0.7, 1.4}) {
    for (double n : {0.5, 1.0, 2.5}) {
      for (double z : {-4.0, -0.5, 0.8}) {
        const double lhs = gen_mittag_leffler({a, 1.0, n}, z).value;
        const double rhs = std::tgamma(a * n + 1.0) * mittag_leffler({a, a * n + 1.0}, z).value;
        EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(rhs)) << a << " " << n << " " << z;
      }
    }
  }
}

TEST(GenMittagLeffler, PrecisionBudgetExceeded) {
  const double a = 0.3, m = 1.0 + 0.5 / 0.3;
  const double z = -4.0 * M_PI * M_PI;
  EXPECT_GT(gen_ml_required_bits({a, m, m}, z), kMaxPrecisionBits);
  EXPECT_THROW(gen_mittag_leffler({a, m, m}, z), AccuracyError);
  EXPECT_EQ(gen_ml_required_bits({0.9, 1.5, 1.5}, -1.0), 53);
}

TEST(GenMittagLeffler, RejectsBadParameters) {
  EXPECT_THROW(gen_mittag_leffler({0.0, 1.0, 1.0}, -1.0), DomainError);
  EXPECT_THROW(gen_mittag_leffler({0.5, -1.0, 1.0}, -1.0), DomainError);
  EXPECT_THROW(gen_mittag_leffler({0.5, 1.0, -4.0}, -1.0), DomainError);
}

TEST(CaputoOde, ClassicalLimitAndConstantForcing) {
  EXPECT_NEAR(caputo_ode_solution(1.0, -1.0, 1.0, 0.0, 1.0), std::exp(-1.0), 1e-15);
  // y' = -2 y + 3, y(0) = 1.
  const double t = 0.7;
  EXPECT_NEAR(caputo_ode_solution(1.0, -2.0, 1.0, 3.0, t),
              1.5 - 0.5 * std::exp(-2.0 * t), 1e-14);
  const double a = 0.6, lam = -1.5, b0 = 2.0, h = 0.5;
  const double e = mittag_leffler({a, 1.0}, lam * std::pow(t, a)).value;
  EXPECT_NEAR(caputo_ode_solution(a, lam, b0, h, t), (b0 + h / lam) * e - h / lam, 1e-13);
  EXPECT_THROW(caputo_ode_solution(1.2, -1.0, 1.0, 0.0, 1.0), DomainError);
}
