#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "bigfloat.hpp"
#include "fracinv/error.hpp"
#include "fracinv/specfun.hpp"
#include "series_util.hpp"

namespace fracinv {

using detail::BigFloat;
using detail::Neumaier;

struct GenMittagLeffler::Table {
  int bits = 0;
  std::vector<BigFloat> coeff;    // c_k, k = 0..size-1
  std::vector<double> log_coeff;  // ln|c_k|
  bool exhaustive = false;        // coefficients vanish past the table
};

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kCancellationBudget = 1e12;
const double kLnDoubleBudget = std::log(1e13);

double arg_a(const GenMLParams& p, std::size_t j) {
  return p.alpha * (static_cast<double>(j) * p.m + p.n);
}

// Gamma(a_j + 1) / Gamma(a_j + alpha + 1) in double.
double ratio_double(const GenMLParams& p, std::size_t j) {
  const double x = arg_a(p, j) + 1.0;
  if (x > 0.0) return boost::math::tgamma_delta_ratio(x, p.alpha);
  return std::tgamma(x) * rgamma(x + p.alpha);
}

// ln|ratio_j|; -inf when the denominator sits on a pole.
double log_ratio(const GenMLParams& p, std::size_t j) {
  const double x = arg_a(p, j) + 1.0;
  const double y = x + p.alpha;
  if (y <= 0.0 && std::nearbyint(y) == y) {
    return -std::numeric_limits<double>::infinity();
  }
  if (x > 0.0) return std::log(boost::math::tgamma_delta_ratio(x, p.alpha));
  return log_abs_gamma(x) - log_abs_gamma(y);
}

struct Scan {
  double log_peak = 0.0;  // the k = 0 term is 1
  std::size_t last_index = 0;
  bool terminates = false;
};

Scan scan_terms(const GenMLParams& p, double z_abs, double drop) {
  Scan s;
  const double lz = std::log(z_abs);
  double l = 0.0;
  for (std::size_t k = 1; k < 20'000'000; ++k) {
    const double lr = log_ratio(p, k - 1);
    if (std::isinf(lr)) {
      s.terminates = true;
      break;
    }
    l += lr + lz;
    s.log_peak = std::max(s.log_peak, l);
    s.last_index = k;
    if (l < s.log_peak - drop && arg_a(p, k) > 0.0) break;
  }
  return s;
}

int bits_for(const Scan& s, double z, double tol) {
  const double need = std::max(s.log_peak, 0.0) - std::log(tol) +
                      2.0 * std::log1p(std::abs(z));
  const double bits = need / kLn2 +
                      std::log2(static_cast<double>(s.last_index) + 2.0) + 32.0;
  return static_cast<int>(std::ceil(std::max(bits, 64.0)));
}

bool accepted(const EvalResult& r, double z, double tol) {
  return std::isfinite(r.value) &&
         r.est_abs_error <= tol * detail::accept_scale(r.value, z);
}

struct DoublePass {
  EvalResult result;
  double cancellation = 0.0;  // max |partial sum| / |result|
};

DoublePass series_double(const GenMLParams& p, double z, double tol) {
  Neumaier sum;
  sum.add(1.0);
  double sum_abs = 1.0;
  double max_partial = 1.0;
  double t = 1.0;
  double prev = 1.0;
  int run = 0;
  const double stop_tol = 0.01 * tol;
  auto finish = [&](double tail, std::size_t k) {
    const double v = sum.value();
    const double err = tail + 4.0 * detail::kEps * sum_abs + detail::kEps * std::abs(v);
    DoublePass d{{v, err, k}, max_partial / std::max(std::abs(v), 1e-300)};
    return d;
  };
  for (std::size_t k = 1; k < 10'000'000; ++k) {
    const double rho_j = ratio_double(p, k - 1);
    if (rho_j == 0.0) return finish(0.0, k);
    t *= z * rho_j;
    const double at = std::abs(t);
    if (!std::isfinite(at)) break;
    if (at == 0.0) return finish(0.0, k);
    run = at < prev ? run + 1 : 0;
    if (run >= 3 && at < stop_tol * std::abs(sum.value())) {
      const double rho = at / prev;
      return finish(rho < 1.0 ? at / (1.0 - rho) : at, k);
    }
    prev = at;
    sum.add(t);
    sum_abs += at;
    max_partial = std::max(max_partial, std::abs(sum.value()));
  }
  DoublePass bad;
  bad.result = {sum.value(), std::numeric_limits<double>::infinity(), 0};
  bad.cancellation = std::numeric_limits<double>::infinity();
  return bad;
}

// ratio_j at the precision of `out`; tmp/num/den are scratch.
void ratio_mp(const GenMLParams& p, std::size_t j, mpfr_ptr out, mpfr_ptr a,
              mpfr_ptr lg_den) {
  mpfr_set_d(a, p.m, MPFR_RNDN);
  mpfr_mul_ui(a, a, j, MPFR_RNDN);
  mpfr_add_d(a, a, p.n, MPFR_RNDN);
  mpfr_mul_d(a, a, p.alpha, MPFR_RNDN);
  mpfr_add_ui(a, a, 1, MPFR_RNDN);  // a_j + 1
  int s_num = 1;
  mpfr_lgamma(out, &s_num, a, MPFR_RNDN);
  mpfr_add_d(a, a, p.alpha, MPFR_RNDN);  // a_j + alpha + 1
  if (mpfr_integer_p(a) && mpfr_sgn(a) <= 0) {
    mpfr_set_zero(out, 1);
    return;
  }
  int s_den = 1;
  mpfr_lgamma(lg_den, &s_den, a, MPFR_RNDN);
  mpfr_sub(out, out, lg_den, MPFR_RNDN);
  mpfr_exp(out, out, MPFR_RNDN);
  if (s_num * s_den < 0) mpfr_neg(out, out, MPFR_RNDN);
}

EvalResult series_mp(const GenMLParams& p, double z, double tol, int bits,
                     const GenMittagLeffler::Table* table) {
  const mpfr_prec_t prec = bits;
  const bool use_table = table != nullptr && table->bits >= bits;
  BigFloat sum(1.0, prec), sum_abs(1.0, prec), pw(1.0, prec), c(1.0, prec),
      term(prec), prev(1.0, prec), thr(prec), tmp(prec), a(prec), lg(prec),
      rho(prec);
  int run = 0;
  const double stop_tol = 0.01 * tol;
  auto finish = [&](double tail, std::size_t k) {
    mpfr_mul_2si(tmp.get(), sum_abs.get(), -bits, MPFR_RNDN);
    mpfr_mul_ui(tmp.get(), tmp.get(), 2 * k + 8, MPFR_RNDN);
    const double v = sum.to_double();
    return EvalResult{v, tail + tmp.to_double() + detail::kEps * std::abs(v), k};
  };
  for (std::size_t k = 1; k < 20'000'000; ++k) {
    mpfr_mul_d(pw.get(), pw.get(), z, MPFR_RNDN);
    if (use_table && k < table->coeff.size()) {
      mpfr_set(c.get(), table->coeff[k].get(), MPFR_RNDN);
    } else if (use_table && table->exhaustive) {
      return finish(0.0, k);
    } else {
      if (use_table && k == table->coeff.size()) {
        mpfr_set(c.get(), table->coeff.back().get(), MPFR_RNDN);
      }
      ratio_mp(p, k - 1, rho.get(), a.get(), lg.get());
      mpfr_mul(c.get(), c.get(), rho.get(), MPFR_RNDN);
    }
    if (mpfr_zero_p(c.get())) return finish(0.0, k);
    mpfr_mul(term.get(), c.get(), pw.get(), MPFR_RNDN);
    run = mpfr_cmpabs(term.get(), prev.get()) < 0 ? run + 1 : 0;
    mpfr_abs(thr.get(), sum.get(), MPFR_RNDN);
    mpfr_mul_d(thr.get(), thr.get(), stop_tol, MPFR_RNDN);
    if (run >= 3 && mpfr_cmpabs(term.get(), thr.get()) < 0) {
      mpfr_div(tmp.get(), term.get(), prev.get(), MPFR_RNDN);
      const double r = std::abs(tmp.to_double());
      const double at = std::abs(term.to_double());
      return finish(r < 1.0 ? at / (1.0 - r) : at, k);
    }
    mpfr_set(prev.get(), term.get(), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    mpfr_abs(tmp.get(), term.get(), MPFR_RNDN);
    mpfr_add(sum_abs.get(), sum_abs.get(), tmp.get(), MPFR_RNDN);
  }
  return {sum.to_double(), std::numeric_limits<double>::infinity(), 0};
}

Scan plan_for(const GenMLParams& p, double z, const GenMittagLeffler::Table* table) {
  const double z_abs = std::abs(z);
  if (table != nullptr && !table->log_coeff.empty()) {
    const double lz = std::log(z_abs);
    Scan s;
    for (std::size_t k = 1; k < table->log_coeff.size(); ++k) {
      const double l = table->log_coeff[k] + static_cast<double>(k) * lz;
      s.log_peak = std::max(s.log_peak, l);
      s.last_index = k;
      if (l < s.log_peak - 60.0 && arg_a(p, k) > 0.0) return s;
    }
    if (table->exhaustive) {
      s.terminates = true;
      return s;
    }
  }
  return scan_terms(p, z_abs, 60.0);
}

EvalResult evaluate(const GenMLParams& p, double z, double tol,
                    const GenMittagLeffler::Table* table) {
  if (std::isnan(z)) throw DomainError("gen_mittag_leffler: NaN argument");
  if (z == 0.0) return {1.0, 0.0, 1};
  const Scan plan = plan_for(p, z, table);
  if (plan.log_peak <= kLnDoubleBudget) {
    const DoublePass d = series_double(p, z, tol);
    if (d.cancellation <= kCancellationBudget && accepted(d.result, z, tol)) {
      return d.result;
    }
  }
  int bits = bits_for(plan, z, tol);
  while (bits <= kMaxPrecisionBits) {
    const EvalResult r = series_mp(p, z, tol, bits, table);
    if (accepted(r, z, tol)) return r;
    bits *= 2;
  }
  throw AccuracyError("gen_mittag_leffler: E_{" + std::to_string(p.alpha) + "," +
                      std::to_string(p.m) + "," + std::to_string(p.n) + "}(" +
                      std::to_string(z) + ") exceeds the " +
                      std::to_string(kMaxPrecisionBits) +
                      "-bit cancellation budget");
}

}  // namespace

void validate(const GenMLParams& p) {
  if (!(p.alpha > 0.0) || !(p.m > 0.0) || !std::isfinite(p.alpha) ||
      !std::isfinite(p.m) || !std::isfinite(p.n)) {
    throw DomainError("GenMLParams: need finite alpha > 0, m > 0, n");
  }
  for (std::size_t j = 0;; ++j) {
    const double a = arg_a(p, j);
    if (a >= 0.0) break;
    if (j > 10'000'000) throw DomainError("GenMLParams: n too negative");
    const double ra = std::nearbyint(a);
    if (ra <= -1.0 && std::abs(a - ra) <= 1e-12 * std::max(1.0, std::abs(a))) {
      throw DomainError("GenMLParams: alpha(jm+n) is a negative integer at j = " +
                        std::to_string(j));
    }
  }
}

EvalResult gen_mittag_leffler(GenMLParams p, double z, double tol) {
  validate(p);
  return evaluate(p, z, tol, nullptr);
}

int gen_ml_required_bits(const GenMLParams& p, double z, double tol) {
  validate(p);
  if (z == 0.0) return 53;
  const Scan s = scan_terms(p, std::abs(z), 60.0);
  if (s.log_peak <= std::log(kCancellationBudget)) return 53;
  return bits_for(s, z, tol);
}

GenMittagLeffler::GenMittagLeffler(GenMLParams p, double z_abs_max, double tol)
    : params_(p), tol_(tol) {
  validate(p);
  if (!(z_abs_max > 0.0)) return;
  const Scan coarse = scan_terms(p, z_abs_max, 60.0);
  if (coarse.log_peak <= kLnDoubleBudget) return;
  const int bits = bits_for(coarse, z_abs_max, tol);
  if (bits > kMaxPrecisionBits) return;
  const Scan full = scan_terms(p, z_abs_max, bits * kLn2 + 40.0);

  auto table = std::make_shared<Table>();
  table->bits = bits;
  table->exhaustive = full.terminates;
  table->coeff.reserve(full.last_index + 1);
  table->log_coeff.reserve(full.last_index + 1);
  BigFloat c(1.0, bits), rho(bits), a(bits), lg(bits), lc(bits);
  table->coeff.push_back(c);
  table->log_coeff.push_back(0.0);
  for (std::size_t k = 1; k <= full.last_index; ++k) {
    ratio_mp(p, k - 1, rho.get(), a.get(), lg.get());
    if (mpfr_zero_p(rho.get())) {
      table->exhaustive = true;
      break;
    }
    mpfr_mul(c.get(), c.get(), rho.get(), MPFR_RNDN);
    table->coeff.push_back(c);
    mpfr_abs(lc.get(), c.get(), MPFR_RNDN);
    mpfr_log(lc.get(), lc.get(), MPFR_RNDN);
    table->log_coeff.push_back(lc.to_double());
  }
  table_ = std::move(table);
}

GenMittagLeffler::~GenMittagLeffler() = default;
GenMittagLeffler::GenMittagLeffler(const GenMittagLeffler&) = default;
GenMittagLeffler& GenMittagLeffler::operator=(const GenMittagLeffler&) = default;
GenMittagLeffler::GenMittagLeffler(GenMittagLeffler&&) noexcept = default;
GenMittagLeffler& GenMittagLeffler::operator=(GenMittagLeffler&&) noexcept = default;

EvalResult GenMittagLeffler::operator()(double z) const {
  return evaluate(params_, z, tol_, table_.get());
}

}  // namespace fracinv
