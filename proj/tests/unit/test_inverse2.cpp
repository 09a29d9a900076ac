#include <gtest/gtest.h>

#include <cmath>

#include "fracinv/error.hpp"
#include "fracinv/inverse2.hpp"
#include "oracle_values.hpp"

using namespace fracinv;

namespace {

Problem2Spec example(double alpha, double beta = 0.5, int K = 4) {
  Problem2Spec s;
  s.alpha = alpha;
  s.beta = beta;
  s.T = 1.0;
  s.phi = [](double) { return 0.0; };
  s.psi = [](double x) { return std::sin(M_PI * x); };
  s.K = K;
  return s;
}

}  // namespace

TEST(Problem2, MatchesOracleValues) {
  for (const auto& o : oracle::kP2Values) {
    const Problem2Solution sol = solve_problem2(example(o.alpha, 0.5, 1));
    EXPECT_NEAR(eval_u2(sol, 0.5, 0.5), o.u_half, 1e-12) << "alpha=" << o.alpha;
    EXPECT_NEAR(eval_h2(sol, 0.5), o.h_half, 1e-11) << "alpha=" << o.alpha;
  }
}

TEST(Problem2, FinalTimeReproducesData) {
  const Problem2Solution sol = solve_problem2(example(0.5));
  for (double x : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    EXPECT_NEAR(eval_u2(sol, 1.0, x), std::sin(M_PI * x), 1e-13);
  }
  EXPECT_EQ(sol.effective_K, 1);
  EXPECT_EQ(sol.active[1], 0);
}

TEST(Problem2, SineAnalysis) {
  const auto c = sine_analyze([](double x) { return std::sin(M_PI * x) - 0.5 * std::sin(3 * M_PI * x); }, 5);
  ASSERT_EQ(c.size(), 5u);
  EXPECT_NEAR(c[0], 1.0, 1e-14);
  EXPECT_NEAR(c[2], -0.5, 1e-14);
  EXPECT_NEAR(c[1], 0.0, 1e-14);
  EXPECT_THROW(sine_analyze([](double) { return 0.0; }, 0), DomainError);
}

TEST(Problem2, ModesReproduceDirectEvaluation) {
  const Problem2Solution sol = solve_problem2(example(0.7, 0.3, 3));
  for (double t : {0.0, 0.3, 1.0}) {
    const auto modes = mode_amplitudes(sol, t);
    for (double x : {0.0, 0.4, 0.8}) EXPECT_EQ(eval_u2_from_modes(sol, modes, x), eval_u2(sol, t, x));
  }
}

TEST(Problem2, NonzeroInitialTrace) {
  Problem2Spec s = example(0.5, 0.5, 2);
  s.phi = [](double x) { return std::sin(M_PI * x); };
  s.psi = [](double x) { return 0.5 * std::sin(M_PI * x); };
  const Problem2Solution sol = solve_problem2(s);
  EXPECT_NEAR(eval_u2(sol, 1.0, 0.5), 0.5, 1e-12);
  EXPECT_NEAR(eval_u2_scaled(sol, 0.0, 0.5), 1.0 / std::tgamma(0.5), 1e-12);
  EXPECT_THROW(eval_u2(sol, 0.0, 0.5), DomainError);
  EXPECT_NEAR(initial_trace_problem2(sol, 1e-3, 0.5, 1e-5), 1.0, 5e-2);
}

TEST(Problem2, BetaZeroUsesTwoParameterFunction) {
  // beta = 0: amplitude h t^alpha E_{alpha,alpha+1}(-pi^2 t^alpha).
  const Problem2Solution sol = solve_problem2(example(0.6, 0.0, 1));
  const double t = 0.4;
  const double u_t = std::pow(t, 0.6) * mittag_leffler({0.6, 1.6}, -M_PI * M_PI * std::pow(t, 0.6)).value;
  const double u_T = mittag_leffler({0.6, 1.6}, -M_PI * M_PI).value;
  EXPECT_NEAR(eval_u2(sol, t, 0.5), u_t / u_T, 1e-12);
}

TEST(Problem2, ZeroDataGivesZeroFields) {
  Problem2Spec s = example(0.5);
  s.psi = [](double) { return 0.0; };
  const Problem2Solution sol = solve_problem2(s);
  EXPECT_EQ(sol.effective_K, 0);
  for (double t : {0.0, 0.5, 1.0}) EXPECT_EQ(eval_u2(sol, t, 0.3), 0.0);
  EXPECT_EQ(eval_h2(sol, 0.3), 0.0);
}

TEST(Problem2, ModeCapWarning) {
  Problem2Spec s = example(0.3, 0.5, 3);
  s.psi = [](double x) { return std::sin(M_PI * x) + std::sin(2 * M_PI * x); };
  const Problem2Solution sol = solve_problem2(s);
  EXPECT_EQ(sol.effective_K, 1);
  ASSERT_FALSE(sol.warnings.empty());
  EXPECT_NE(sol.warnings.front().find("mode cap"), std::string::npos);
}

TEST(Problem2, Validation) {
  Problem2Spec s = example(0.5);
  s.psi = [](double x) { return x; };
  EXPECT_THROW(validate(s), DomainError);
  s = example(1.0);
  EXPECT_THROW(validate(s), DomainError);
  s = example(0.5, -0.6);
  EXPECT_THROW(validate(s), DomainError);
  s = example(0.5);
  s.K = 0;
  EXPECT_THROW(validate(s), DomainError);
}
