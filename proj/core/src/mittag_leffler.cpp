#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/special_functions/sin_pi.hpp>

#include "bigfloat.hpp"
#include "fracinv/error.hpp"
#include "fracinv/specfun.hpp"
#include "series_util.hpp"

namespace fracinv {

using detail::BigFloat;
using detail::Neumaier;

struct MittagLeffler::Table {
  int bits = 0;
  std::vector<BigFloat> rgamma;  // 1/Gamma(alpha k + beta), k = 0..size-1
};

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kLnPi = 1.14472988584940017414;

// Tier boundaries in r = |z|^(1/alpha). The double series is only attempted
// below kDoubleTierMaxR; its rounding estimate decides acceptance.
constexpr double kDoubleTierMaxR = 12.0;
constexpr double kAsymptoticMinR = 12.0;
// With alpha < 2 the asymptotic branch is always accurate past this r, so
// MPFR coefficient tables never need to reach further.
constexpr double kTableMaxR = 60.0;

bool accepted(const EvalResult& r, double z, double tol) {
  return std::isfinite(r.value) &&
         r.est_abs_error <= tol * detail::accept_scale(r.value, z);
}

// ln of the largest |z^k / Gamma(alpha k + beta)| and the index past which
// terms have fallen `drop` nats below it.
struct TermScan {
  double log_peak = -std::numeric_limits<double>::infinity();
  std::size_t last_index = 0;
};

TermScan scan_terms(const MLParams& p, double z_abs, double drop) {
  TermScan s;
  const double lz = std::log(z_abs);
  for (std::size_t k = 0; k < 2'000'000; ++k) {
    const double x = p.alpha * static_cast<double>(k) + p.beta;
    if (rgamma(x) == 0.0 && x <= 0.0) continue;
    const double l = static_cast<double>(k) * lz - log_abs_gamma(x);
    s.log_peak = std::max(s.log_peak, l);
    s.last_index = k;
    if (x > 2.0 && l < s.log_peak - drop) break;
  }
  return s;
}

int series_bits(const MLParams& p, double z, double tol) {
  const double z_abs = std::abs(z);
  const TermScan s = scan_terms(p, z_abs, 60.0);
  const double log_peak = std::max(s.log_peak, 0.0);
  const double need = log_peak - std::log(tol) + 2.0 * std::log1p(z_abs);
  const double bits = need / kLn2 +
                      std::log2(static_cast<double>(s.last_index) + 2.0) + 32.0;
  return static_cast<int>(std::ceil(std::max(bits, 64.0)));
}

EvalResult series_double(const MLParams& p, double z, double tol) {
  const double lz = std::log(std::abs(z));
  const double stop_tol = 0.01 * tol;
  Neumaier sum;
  double sum_abs = 0.0;
  double prev = 0.0;
  int run = 0;
  for (std::size_t k = 0; k < 1'000'000; ++k) {
    const double kd = static_cast<double>(k);
    const double x = p.alpha * kd + p.beta;
    double t = 0.0;
    const double rg = rgamma(x);
    if (rg != 0.0) {
      if (x > 0.0 && x < 170.0 && std::abs(kd * lz) < 700.0) {
        t = std::pow(z, kd) * rg;
      } else {
        const double mag = std::exp(kd * lz - log_abs_gamma(x));
        const bool neg = (z < 0.0 && (k & 1U)) != (rg < 0.0);
        t = neg ? -mag : mag;
      }
    }
    const double at = std::abs(t);
    if (at != 0.0) {
      if (prev != 0.0 && at < prev) {
        ++run;
      } else if (prev != 0.0) {
        run = 0;
      }
      const double s = std::abs(sum.value());
      if (run >= 3 && at < stop_tol * s) {
        const double rho = at / prev;
        const double tail = rho < 1.0 ? at / (1.0 - rho) : at;
        const double rounding = 4.0 * detail::kEps * sum_abs +
                                detail::kEps * std::abs(sum.value());
        return {sum.value(), tail + rounding, k};
      }
      prev = at;
    }
    sum.add(t);
    sum_abs += at;
    if (!std::isfinite(sum_abs)) break;
  }
  return {sum.value(), std::numeric_limits<double>::infinity(), 0};
}

EvalResult series_mp(const MLParams& p, double z, double tol, int bits,
                     const MittagLeffler::Table* table) {
  const mpfr_prec_t prec = bits;
  BigFloat sum(prec), sum_abs(prec), pw(1.0, prec), term(prec), x(prec),
      rg(prec), prev(prec), thr(prec), tmp(prec);
  const bool use_table = table != nullptr && table->bits >= bits;
  const double stop_tol = 0.01 * tol;
  int run = 0;
  bool have_prev = false;
  for (std::size_t k = 0; k < 4'000'000; ++k) {
    if (k > 0) mpfr_mul_d(pw.get(), pw.get(), z, MPFR_RNDN);
    if (use_table && k < table->rgamma.size()) {
      mpfr_mul(term.get(), pw.get(), table->rgamma[k].get(), MPFR_RNDN);
    } else {
      mpfr_set_d(x.get(), p.alpha, MPFR_RNDN);
      mpfr_mul_ui(x.get(), x.get(), k, MPFR_RNDN);
      mpfr_add_d(x.get(), x.get(), p.beta, MPFR_RNDN);
      detail::rgamma_mp(rg.get(), x.get());
      mpfr_mul(term.get(), pw.get(), rg.get(), MPFR_RNDN);
    }
    if (!mpfr_zero_p(term.get())) {
      if (have_prev) {
        run = mpfr_cmpabs(term.get(), prev.get()) < 0 ? run + 1 : 0;
      }
      mpfr_abs(thr.get(), sum.get(), MPFR_RNDN);
      mpfr_mul_d(thr.get(), thr.get(), stop_tol, MPFR_RNDN);
      if (run >= 3 && mpfr_cmpabs(term.get(), thr.get()) < 0) {
        mpfr_div(tmp.get(), term.get(), prev.get(), MPFR_RNDN);
        const double rho = std::abs(tmp.to_double());
        const double at = std::abs(term.to_double());
        const double tail = rho < 1.0 ? at / (1.0 - rho) : at;
        mpfr_mul_2si(tmp.get(), sum_abs.get(), -bits, MPFR_RNDN);
        mpfr_mul_ui(tmp.get(), tmp.get(), k + 8, MPFR_RNDN);
        const double value = sum.to_double();
        const double err = tail + tmp.to_double() + detail::kEps * std::abs(value);
        return {value, err, k};
      }
      mpfr_set(prev.get(), term.get(), MPFR_RNDN);
      have_prev = true;
    }
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    mpfr_abs(tmp.get(), term.get(), MPFR_RNDN);
    mpfr_add(sum_abs.get(), sum_abs.get(), tmp.get(), MPFR_RNDN);
  }
  return {sum.to_double(), std::numeric_limits<double>::infinity(), 0};
}

EvalResult series_mp_adaptive(const MLParams& p, double z, double tol,
                              const MittagLeffler::Table* table) {
  int bits = series_bits(p, z, tol);
  if (table != nullptr && table->bits >= bits) bits = table->bits;
  while (bits <= kMaxPrecisionBits) {
    EvalResult r = series_mp(p, z, tol, bits, table);
    if (accepted(r, z, tol)) return r;
    bits *= 2;
  }
  throw AccuracyError("mittag_leffler: E_{" + std::to_string(p.alpha) + "," +
                      std::to_string(p.beta) + "}(" + std::to_string(z) +
                      ") needs more than " +
                      std::to_string(kMaxPrecisionBits) + " bits");
}

EvalResult series_any(const MLParams& p, double z, double tol,
                      const MittagLeffler::Table* table) {
  if (z == 0.0) return {rgamma(p.beta), 0.0, 1};
  EvalResult r = series_double(p, z, tol);
  if (accepted(r, z, tol)) return r;
  return series_mp_adaptive(p, z, tol, table);
}

EvalResult asymptotic_impl(const MLParams& p, double z) {
  const double az = -z;
  const double lz = std::log(az);
  const double r = std::pow(az, 1.0 / p.alpha);
  Neumaier sum;
  double prev_env = std::numeric_limits<double>::infinity();
  double omitted = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 1; k < 100'000; ++k) {
    const double kd = static_cast<double>(k);
    const double x = p.beta - p.alpha * kd;
    // |1/Gamma(x)| <= Gamma(1-x)/pi for x < 1; exact magnitude otherwise.
    double log_env;
    double term;
    const bool odd = (k & 1U) != 0;
    if (x < 0.5) {
      log_env = log_abs_gamma(1.0 - x) - kLnPi - kd * lz;
      const double mag = std::exp(log_env);
      // -z^{-k}/Gamma(x) = -(-1)^k |z|^{-k} sin(pi x) Gamma(1-x) / pi
      term = (odd ? mag : -mag) * boost::math::sin_pi(x);
    } else {
      const double rg = rgamma(x);
      log_env = std::log(std::abs(rg)) - kd * lz;
      const double mag = std::exp(-kd * lz) * rg;
      term = odd ? mag : -mag;
    }
    const double env = std::exp(log_env);
    if (env > prev_env) {
      omitted = env;
      break;
    }
    sum.add(term);
    used = k;
    prev_env = env;
    if (env < 1e-20 * std::abs(sum.value())) {
      omitted = env;
      break;
    }
  }
  double value = sum.value();
  // Exponentially small contributions: the saddle pair enters the expansion
  // on the negative axis for 1 < alpha < 2; otherwise it is bounded by e^{-r}.
  const double exp_small =
      std::exp(-r) * std::max(1.0, std::pow(r, 1.0 - p.beta)) * 2.0 / p.alpha;
  if (p.alpha > 1.0 && p.alpha < 2.0) {
    const double phase = M_PI / p.alpha;
    const double mag = 2.0 / p.alpha * std::pow(r, 1.0 - p.beta) *
                       std::exp(r * std::cos(phase));
    value += mag * std::cos((1.0 - p.beta) * phase + r * std::sin(phase));
  }
  const double err = omitted + exp_small + 4.0 * detail::kEps * std::abs(value);
  return {value, err, used};
}

EvalResult evaluate(const MLParams& p, double z, double tol,
                    const MittagLeffler::Table* table) {
  if (std::isnan(z)) throw DomainError("mittag_leffler: NaN argument");
  if (z == 0.0) return {rgamma(p.beta), 0.0, 1};
  if (z > 0.0) {
    EvalResult r = series_double(p, z, tol);
    if (!std::isfinite(r.value)) {
      throw AccuracyError("mittag_leffler: overflow at z = " +
                          std::to_string(z));
    }
    if (accepted(r, z, tol)) return r;
    return series_mp_adaptive(p, z, tol, table);
  }
  const double r = std::pow(-z, 1.0 / p.alpha);
  if (r <= kDoubleTierMaxR) {
    EvalResult s = series_double(p, z, tol);
    if (accepted(s, z, tol)) return s;
  }
  if (p.alpha < 2.0 && r >= kAsymptoticMinR) {
    EvalResult a = asymptotic_impl(p, z);
    if (accepted(a, z, tol)) return a;
  }
  return series_mp_adaptive(p, z, tol, table);
}

}  // namespace

void validate(const MLParams& p) {
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha) || !std::isfinite(p.beta)) {
    throw DomainError("MLParams: need finite alpha > 0 and finite beta");
  }
}

EvalResult mittag_leffler(MLParams p, double z, double tol) {
  validate(p);
  return evaluate(p, z, tol, nullptr);
}

EvalResult mittag_leffler_deriv(MLParams p, int k, double z, double tol) {
  validate(p);
  if (k < 0 || k > 4) throw DomainError("mittag_leffler_deriv: k must be in [0,4]");
  if (k == 0) return evaluate(p, z, tol, nullptr);

  if (std::abs(z) <= 1.0) {
    // Term-differentiated series: sum_{j>=k} j!/(j-k)! z^{j-k} / Gamma(alpha j + beta).
    Neumaier sum;
    double sum_abs = 0.0;
    double prev = 0.0;
    int run = 0;
    for (std::size_t j = static_cast<std::size_t>(k); j < 100'000; ++j) {
      double falling = 1.0;
      for (int i = 0; i < k; ++i) falling *= static_cast<double>(j - i);
      const double t = falling * std::pow(z, static_cast<double>(j - k)) *
                       rgamma(p.alpha * static_cast<double>(j) + p.beta);
      const double at = std::abs(t);
      if (at != 0.0) {
        run = (prev != 0.0 && at < prev) ? run + 1 : 0;
        if (run >= 3 && at < 0.01 * tol * std::abs(sum.value())) {
          const double rho = at / prev;
          const double tail = rho < 1.0 ? at / (1.0 - rho) : at;
          return {sum.value(), tail + 4.0 * detail::kEps * sum_abs, j};
        }
        prev = at;
      }
      sum.add(t);
      sum_abs += at;
      if (z == 0.0 && j > static_cast<std::size_t>(k)) {
        return {sum.value(), 4.0 * detail::kEps * sum_abs, j};
      }
    }
    throw AccuracyError("mittag_leffler_deriv: series did not terminate");
  }

  // alpha z E^{(j)}_b = E^{(j-1)}_{b-1} - (b - 1 + alpha (j-1)) E^{(j-1)}_b,
  // tabulated over b = beta - i.
  std::array<double, 5> val{};
  std::array<double, 5> err{};
  std::size_t terms = 0;
  for (int i = 0; i <= k; ++i) {
    const EvalResult e = evaluate({p.alpha, p.beta - i}, z, tol, nullptr);
    val[i] = e.value;
    err[i] = e.est_abs_error;
    terms += e.terms_used;
  }
  for (int j = 1; j <= k; ++j) {
    for (int i = 0; i + j <= k; ++i) {
      const double b = p.beta - i;
      const double c = b - 1.0 + p.alpha * (j - 1);
      const double denom = p.alpha * z;
      val[i] = (val[i + 1] - c * val[i]) / denom;
      err[i] = (err[i + 1] + std::abs(c) * err[i]) / std::abs(denom) +
               4.0 * detail::kEps * std::abs(val[i]);
    }
  }
  return {val[0], err[0], terms};
}

namespace ml_branch {

EvalResult series(MLParams p, double z, double tol) {
  validate(p);
  return series_any(p, z, tol, nullptr);
}

EvalResult asymptotic(MLParams p, double z) {
  validate(p);
  if (!(z < 0.0)) throw DomainError("ml_branch::asymptotic: needs z < 0");
  if (!(p.alpha < 2.0)) throw DomainError("ml_branch::asymptotic: needs alpha < 2");
  return asymptotic_impl(p, z);
}

}  // namespace ml_branch

MittagLeffler::MittagLeffler(MLParams p, double z_abs_max, double tol)
    : params_(p), tol_(tol) {
  validate(p);
  if (!(z_abs_max > 0.0)) return;
  double r = std::pow(z_abs_max, 1.0 / p.alpha);
  if (p.alpha < 2.0) r = std::min(r, kTableMaxR);
  if (r < 1.0) return;  // the double tier covers this range
  const double z_tab = -std::pow(r, p.alpha);
  const int bits = series_bits(p, z_tab, tol);
  if (bits > kMaxPrecisionBits) return;
  const TermScan s = scan_terms(p, -z_tab, bits * kLn2 + 40.0);
  auto table = std::make_shared<Table>();
  table->bits = bits;
  table->rgamma.reserve(s.last_index + 1);
  BigFloat x(bits);
  for (std::size_t k = 0; k <= s.last_index; ++k) {
    mpfr_set_d(x.get(), p.alpha, MPFR_RNDN);
    mpfr_mul_ui(x.get(), x.get(), k, MPFR_RNDN);
    mpfr_add_d(x.get(), x.get(), p.beta, MPFR_RNDN);
    BigFloat rg(bits);
    detail::rgamma_mp(rg.get(), x.get());
    table->rgamma.push_back(std::move(rg));
  }
  table_ = std::move(table);
}

MittagLeffler::~MittagLeffler() = default;
MittagLeffler::MittagLeffler(const MittagLeffler&) = default;
MittagLeffler& MittagLeffler::operator=(const MittagLeffler&) = default;
MittagLeffler::MittagLeffler(MittagLeffler&&) noexcept = default;
MittagLeffler& MittagLeffler::operator=(MittagLeffler&&) noexcept = default;

EvalResult MittagLeffler::operator()(double z) const {
  return evaluate(params_, z, tol_, table_.get());
}

}  // namespace fracinv
