#pragma once

// Gamma, two-parameter Mittag-Leffler and Kilbas generalized Mittag-Leffler
// functions on the real line, with certified error estimates.

#include <cstddef>
#include <memory>

namespace fracinv {

/// Default tolerance: the returned est_abs_error is at most
/// tol * max(|value|, 1/(1+|z|)^2).
inline constexpr double kDefaultTol = 1e-14;

/// Precision ceiling for the extended-precision (MPFR) tier.
inline constexpr int kMaxPrecisionBits = 4096;

/// Positive minimum of Gamma on (0, inf).
inline constexpr double kGammaMinimumAbscissa = 1.4616321449683623;

struct MLParams {
  double alpha = 1.0;
  double beta = 1.0;
};

struct GenMLParams {
  double alpha = 1.0;
  double m = 1.0;
  double n = 1.0;
};

struct EvalResult {
  double value = 0.0;
  double est_abs_error = 0.0;
  std::size_t terms_used = 0;
};

// ---------------------------------------------------------------------------
// Gamma function

/// Gamma(x). Throws PoleError at x in {0, -1, -2, ...}.
double gamma_fn(double x);

/// log|Gamma(x)|. Reentrant (does not touch the global signgam).
double log_abs_gamma(double x);

/// 1/Gamma(x), entire; exactly zero at the poles of Gamma.
double rgamma(double x);

// ---------------------------------------------------------------------------
// Mittag-Leffler functions

/// Throws DomainError unless alpha > 0 and both parameters are finite.
void validate(const MLParams& p);

/// Throws DomainError unless alpha > 0, m > 0 and alpha(jm+n) avoids the
/// negative integers for every j >= 0.
void validate(const GenMLParams& p);

/// E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta).
///
/// For z < 0 the evaluation is tiered on r = |z|^(1/alpha): a double series
/// while its rounding estimate is within tolerance, the algebraic asymptotic
/// expansion (plus the saddle-point pair when 1 < alpha < 2) once its optimal
/// truncation error is, and otherwise the series in MPFR with precision sized
/// from the peak term. Throws AccuracyError when no tier meets tol.
EvalResult mittag_leffler(MLParams p, double z, double tol = kDefaultTol);

/// k-th derivative of E_{alpha,beta} in z, 0 <= k <= 4.
EvalResult mittag_leffler_deriv(MLParams p, int k, double z,
                                double tol = kDefaultTol);

/// Kilbas E_{alpha,m,n}(z) = 1 + sum_{k>=1} prod_{j<k} c_j z^k with
/// c_j = Gamma(alpha(jm+n)+1) / Gamma(alpha(jm+n+1)+1).
///
/// A double pass is accepted when max|partial sum| / |result| <= 1e12;
/// otherwise the sum is redone in MPFR. Throws AccuracyError if the required
/// precision exceeds kMaxPrecisionBits.
EvalResult gen_mittag_leffler(GenMLParams p, double z,
                              double tol = kDefaultTol);

/// Solution of  D_C^alpha y = lambda y + f_const,  y(0) = b0, on t >= 0,
/// for 0 < alpha <= 1 (alpha = 1 is the classical ODE):
/// y(t) = b0 E_{alpha,1}(lambda t^alpha) + f_const t^alpha E_{alpha,alpha+1}(lambda t^alpha).
double caputo_ode_solution(double alpha, double lambda, double b0,
                           double f_const, double t);

/// MPFR bits the series for E_{alpha,m,n}(z) needs to reach tol, estimated
/// from the magnitude of its largest term.
int gen_ml_required_bits(const GenMLParams& p, double z,
                         double tol = kDefaultTol);

/// Direct access to the individual branches of E_{alpha,beta}, for
/// cross-validation. Neither applies the tier selection.
namespace ml_branch {
/// Taylor series, double first and MPFR when the rounding estimate demands.
EvalResult series(MLParams p, double z, double tol = kDefaultTol);
/// Asymptotic expansion for z < 0 and 0 < alpha < 2, truncated at its
/// smallest term. est_abs_error is the size of the first omitted term.
EvalResult asymptotic(MLParams p, double z);
}  // namespace ml_branch

/// E_{alpha,beta} evaluator for repeated calls with fixed parameters.
///
/// Coefficient tables for the extended-precision tier are built once in the
/// constructor for |z| <= z_abs_max; the object is immutable afterwards and
/// safe to share between threads. Arguments beyond z_abs_max still work and
/// fall back to per-call coefficients.
class MittagLeffler {
 public:
  explicit MittagLeffler(MLParams p, double z_abs_max = 0.0,
                         double tol = kDefaultTol);
  ~MittagLeffler();
  MittagLeffler(const MittagLeffler&);
  MittagLeffler& operator=(const MittagLeffler&);
  MittagLeffler(MittagLeffler&&) noexcept;
  MittagLeffler& operator=(MittagLeffler&&) noexcept;

  EvalResult operator()(double z) const;
  const MLParams& params() const { return params_; }

  struct Table;

 private:
  MLParams params_;
  double tol_;
  std::shared_ptr<const Table> table_;
};

/// E_{alpha,m,n} evaluator with the same sharing contract as MittagLeffler.
class GenMittagLeffler {
 public:
  explicit GenMittagLeffler(GenMLParams p, double z_abs_max = 0.0,
                            double tol = kDefaultTol);
  ~GenMittagLeffler();
  GenMittagLeffler(const GenMittagLeffler&);
  GenMittagLeffler& operator=(const GenMittagLeffler&);
  GenMittagLeffler(GenMittagLeffler&&) noexcept;
  GenMittagLeffler& operator=(GenMittagLeffler&&) noexcept;

  EvalResult operator()(double z) const;
  const GenMLParams& params() const { return params_; }

  struct Table;

 private:
  GenMLParams params_;
  double tol_;
  std::shared_ptr<const Table> table_;
};

}  // namespace fracinv
