#include "fracproc/specfun.hpp"

#include <quadmath.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "fracproc/error.hpp"

namespace fracproc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLogMax = 709.782712893384;  // ln(DBL_MAX)
constexpr double kPi = 3.14159265358979323846;

// 2^-112, the quad-precision unit roundoff.
const __float128 kQuadEps = ldexpq(1.0, -112);

std::string describe(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// sin(pi x) with exact zeros at the integers.
double sin_pi(double x) {
  if (x == std::floor(x)) return 0.0;
  double r = x - 2.0 * std::round(0.5 * x);  // r in [-1, 1]
  double sign = 1.0;
  if (r < 0.0) {
    r = -r;
    sign = -1.0;
  }
  if (r > 0.5) r = 1.0 - r;
  return sign * std::sin(kPi * r);
}

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Negative-axis Taylor series in quad precision. The alternating terms
// peak near exp(|x|^(1/nu)) before cancelling down to O(1/|x|).
MlfEvaluation taylor_negative(double nu, double x, std::size_t max_terms) {
  const __float128 qnu = nu;
  const __float128 log_abs_x = logq(static_cast<__float128>(-x));
  __float128 sum = 0;
  __float128 abs_sum = 0;
  __float128 prev_mag = 0;
  bool past_peak = false;
  for (std::size_t k = 0; k < max_terms; ++k) {
    const __float128 kq = static_cast<__float128>(k);
    const __float128 mag = expq(kq * log_abs_x - lgammaq(qnu * kq + 1));
    const __float128 term = (k % 2 == 0) ? mag : -mag;
    if (k > 0 && mag < prev_mag) past_peak = true;
    if (past_peak && mag <= ldexpq(1.0, -70) * fabsq(sum)) {
      MlfEvaluation out;
      out.value = static_cast<double>(sum);
      out.est_abs_error = static_cast<double>(mag + kQuadEps * abs_sum * 4) +
                          kEps * std::abs(out.value);
      out.branch_used = MlfBranch::TaylorSeries;
      return out;
    }
    sum += term;
    abs_sum += mag;
    prev_mag = mag;
  }
  throw NumericalError("mittag_leffler: Taylor series exhausted " + std::to_string(max_terms) +
                       " terms at x = " + describe(x));
}

MlfEvaluation taylor_positive(double nu, double x, std::size_t max_terms) {
  const double log_x = std::log(x);
  CompensatedSum sum;
  double rounding = 0.0;
  double prev = 0.0;
  bool past_peak = false;
  for (std::size_t k = 0; k < max_terms; ++k) {
    const double kd = static_cast<double>(k);
    const double exponent = kd * log_x - log_gamma(nu * kd + 1.0);
    const double term = std::exp(exponent);
    if (k > 0 && term < prev) past_peak = true;
    if (past_peak && term <= 1e-17 * sum.value()) {
      MlfEvaluation out;
      out.value = sum.value();
      out.est_abs_error = term + rounding;
      out.branch_used = MlfBranch::TaylorSeries;
      return out;
    }
    sum.add(term);
    // exp() amplifies the absolute error of its argument.
    rounding += kEps * term * (2.0 + std::abs(exponent));
    prev = term;
  }
  throw NumericalError("mittag_leffler: Taylor series exhausted " + std::to_string(max_terms) +
                       " terms at x = " + describe(x));
}

// Algebraic series -sum_j x^-j / Gamma(1 - nu j). Its envelope
// |x|^-j Gamma(nu j) decreases while nu j < |x|^(1/nu), so the sum runs up
// to that optimal truncation point or until terms drop below 1e-18 * scale.
// Individual terms oscillate through the zeros of 1/Gamma, so monotonicity
// of single terms is not a stopping signal.
struct AlgebraicSeries {
  double sum = 0.0;
  double next_term = 0.0;
};

AlgebraicSeries algebraic_series(double nu, double x, double scale) {
  constexpr std::size_t kMaxTerms = 2000;
  const double optimal = std::pow(std::abs(x), 1.0 / nu) / nu;
  const std::size_t last = std::min<std::size_t>(kMaxTerms, static_cast<std::size_t>(optimal));
  const double inv_x = 1.0 / x;
  CompensatedSum sum;
  double power = 1.0;
  for (std::size_t j = 1; j <= last + 1; ++j) {
    power *= inv_x;
    const double term = -power * reciprocal_gamma(1.0 - nu * static_cast<double>(j));
    const double mag = std::abs(term);
    if (j == last + 1 || (mag != 0.0 && mag <= 1e-18 * scale)) return {sum.value(), mag};
    sum.add(term);
  }
  return {sum.value(), 0.0};
}

void require_finite(double x) {
  if (!std::isfinite(x)) throw DomainError("mittag_leffler: argument must be finite");
}

}  // namespace

FractionalOrder::FractionalOrder(double nu) : nu_(nu) {
  if (!(nu > 0.0 && nu <= 1.0))
    throw DomainError("fractional order must lie in (0, 1], got " + describe(nu));
}

std::string_view to_string(MlfBranch branch) {
  switch (branch) {
    case MlfBranch::TaylorSeries: return "TaylorSeries";
    case MlfBranch::AsymptoticNegative: return "AsymptoticNegative";
    case MlfBranch::ExponentialPositive: return "ExponentialPositive";
    case MlfBranch::ClassicalExponential: return "ClassicalExponential";
  }
  return "Unknown";
}

double taylor_switch_point(FractionalOrder nu, const MlfOptions& opts) {
  return std::pow(opts.switch_scale, nu.value());
}

MlfEvaluation mittag_leffler_taylor(FractionalOrder nu, double x, const MlfOptions& opts) {
  require_finite(x);
  if (std::abs(x) > taylor_switch_point(nu, opts) * (1.0 + 1e-12))
    throw DomainError("mittag_leffler_taylor: |x| beyond the Taylor switch point");
  if (x == 0.0) return {1.0, 0.0, MlfBranch::TaylorSeries};
  return x < 0.0 ? taylor_negative(nu.value(), x, opts.max_terms)
                 : taylor_positive(nu.value(), x, opts.max_terms);
}

MlfEvaluation mittag_leffler(FractionalOrder nu, double x, const MlfOptions& opts) {
  require_finite(x);
  const double v = nu.value();

  if (nu.is_classical()) {
    if (x > kLogMax)
      throw OverflowError("mittag_leffler: exp(" + describe(x) + ") overflows", x);
    const double e = std::exp(x);
    return {e, kEps * e, MlfBranch::ClassicalExponential};
  }
  if (x == 0.0) return {1.0, 0.0, MlfBranch::TaylorSeries};

  const double scale = std::pow(std::abs(x), 1.0 / v);
  if (scale <= opts.switch_scale) return mittag_leffler_taylor(nu, x, opts);

  if (x < 0.0) {
    // Leading term sets the magnitude of the result.
    const double lead = reciprocal_gamma(1.0 - v) / -x;
    const AlgebraicSeries series = algebraic_series(v, x, std::abs(lead));
    return {series.sum, series.next_term + 4.0 * kEps * std::abs(series.sum),
            MlfBranch::AsymptoticNegative};
  }

  const double log_lead = scale - std::log(v);
  if (log_lead > kLogMax)
    throw OverflowError("mittag_leffler: E_nu(" + describe(x) + ") exceeds double range",
                        log_lead);
  const double lead = std::exp(log_lead);
  const AlgebraicSeries series = algebraic_series(v, x, lead);
  const double value = lead + series.sum;
  if (!std::isfinite(value))
    throw OverflowError("mittag_leffler: E_nu(" + describe(x) + ") exceeds double range",
                        log_lead);
  // exp() of a large argument carries relative error ~ scale * eps.
  return {value, series.next_term + kEps * (2.0 + scale) * value,
          MlfBranch::ExponentialPositive};
}

double log_mittag_leffler(FractionalOrder nu, double x, const MlfOptions& opts) {
  require_finite(x);
  if (x < 0.0) throw DomainError("log_mittag_leffler: requires x >= 0");
  if (nu.is_classical()) return x;
  const double v = nu.value();
  const double scale = std::pow(x, 1.0 / v);
  if (scale <= opts.switch_scale) return std::log(mittag_leffler_taylor(nu, x, opts).value);
  const double log_lead = scale - std::log(v);
  // The correction is O(1/x), negligible against exp(scale) once scale is
  // past the switch; keep it anyway where it is representable.
  if (log_lead < kLogMax) {
    const AlgebraicSeries series = algebraic_series(v, x, std::exp(log_lead));
    return log_lead + std::log1p(series.sum * std::exp(-log_lead));
  }
  return log_lead;
}

double mittag_leffler_asymptotic_tail(FractionalOrder nu, double x, std::size_t terms,
                                      const MlfOptions& opts) {
  require_finite(x);
  if (nu.is_classical())
    throw DomainError("mittag_leffler_asymptotic_tail: nu = 1 has no power-law tail");
  if (terms < 1) throw DomainError("mittag_leffler_asymptotic_tail: terms must be >= 1");
  if (x > -taylor_switch_point(nu, opts) * (1.0 - 1e-12))
    throw DomainError("mittag_leffler_asymptotic_tail: x must not exceed -x_switch");
  const double inv_x = 1.0 / x;
  CompensatedSum sum;
  double power = 1.0;
  for (std::size_t j = 1; j <= terms; ++j) {
    power *= inv_x;
    sum.add(-power * reciprocal_gamma(1.0 - nu.value() * static_cast<double>(j)));
  }
  return sum.value();
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("log_gamma: argument must be positive and finite, got " + describe(x));
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double reciprocal_gamma(double x) {
  if (x > 0.0) {
    if (x < 170.0) return 1.0 / std::tgamma(x);
    return std::exp(-log_gamma(x));
  }
  if (x == std::floor(x)) return 0.0;
  // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi.
  const double s = sin_pi(x);
  const double y = 1.0 - x;
  if (y < 170.0) return s * std::tgamma(y) / kPi;
  return s * std::exp(log_gamma(y)) / kPi;
}

}  // namespace fracproc
