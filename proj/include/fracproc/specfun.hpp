#pragma once

#include <cstddef>
#include <string_view>

namespace fracproc {

/// Order of differentiation nu in (0, 1]. nu = 1 is the classical case.
class FractionalOrder {
public:
  /// Throws DomainError unless 0 < nu <= 1.
  explicit FractionalOrder(double nu);

  double value() const noexcept { return nu_; }
  bool is_classical() const noexcept { return nu_ == 1.0; }

  friend bool operator==(FractionalOrder, FractionalOrder) = default;

private:
  double nu_;
};

enum class MlfBranch {
  TaylorSeries,
  AsymptoticNegative,
  ExponentialPositive,
  ClassicalExponential,  // nu == 1, evaluated as exp(x)
};

std::string_view to_string(MlfBranch branch);

struct MlfEvaluation {
  double value = 0.0;
  /// Estimate (not a bound): first neglected term plus accumulated rounding.
  double est_abs_error = 0.0;
  MlfBranch branch_used = MlfBranch::TaylorSeries;
};

struct MlfOptions {
  /// The Taylor series serves |x|^(1/nu) <= switch_scale; beyond it the
  /// asymptotic expansions take over. Cancellation in the negative-axis
  /// series grows like exp(|x|^(1/nu)), so the switch is measured on that
  /// scale rather than on |x|.
  double switch_scale = 40.0;
  std::size_t max_terms = 10000;
};

/// Argument magnitude at which the Taylor and asymptotic branches meet.
double taylor_switch_point(FractionalOrder nu, const MlfOptions& opts = {});

/// One-parameter Mittag-Leffler function E_nu(x) = sum_k x^k / Gamma(nu k + 1).
///
/// Throws DomainError for non-finite x and OverflowError (carrying ln E) when
/// the positive-axis value exceeds the double range.
MlfEvaluation mittag_leffler(FractionalOrder nu, double x, const MlfOptions& opts = {});

/// ln E_nu(x) for x >= 0; never overflows.
double log_mittag_leffler(FractionalOrder nu, double x, const MlfOptions& opts = {});

/// Taylor branch forced regardless of the switch point (|x| must not exceed
/// it). Negative arguments are summed in quad precision.
MlfEvaluation mittag_leffler_taylor(FractionalOrder nu, double x, const MlfOptions& opts = {});

/// Truncated negative-axis expansion sum_{j=1..terms} -(-x)^(-j) / Gamma(1 - nu j).
/// Requires x <= -taylor_switch_point(nu) and nu < 1.
double mittag_leffler_asymptotic_tail(FractionalOrder nu, double x, std::size_t terms,
                                      const MlfOptions& opts = {});

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// 1 / Gamma(x) for any real x (zero at the non-positive integers).
double reciprocal_gamma(double x);

}  // namespace fracproc
