#pragma once

#include <optional>
#include <string_view>

#include "fracproc/fraccalc.hpp"
#include "fracproc/specfun.hpp"

namespace fracproc {

/// ETAS triggering kernel phi(t) = (1-k) theta t0^theta t^-(1+theta) H(t - t0).
struct EtasParams {
  EtasParams(double k, double theta, double t0);

  double k;
  double theta;
  double t0;
};

enum class Regime { Subcritical, Supercritical, InfiniteBranching };

std::string_view to_string(Regime r);

/// Throws DomainError for k > 1.
double kernel(const EtasParams& p, double t);

/// Integral of the kernel over (0, inf): 1 - k for theta > 0, nullopt
/// (divergent) for theta < 0. Throws DomainError for k > 1.
std::optional<double> branching_ratio(const EtasParams& p);

/// Subcritical: k > 0, theta > 0. Supercritical: k < 0, theta > 0.
/// InfiniteBranching: k > 0, theta < 0. Any other sign pattern, including
/// k = 0, throws DomainError.
Regime classify_regime(const EtasParams& p);

enum class RateSign { DeathLike, BirthLike };

/// Fractional relaxation D^nu N = -lambda N obtained from the
/// self-consistency equation with t - t0 ~ t, for theta in (-1, 0).
struct FractionalMapping {
  FractionalOrder nu;
  /// (1 - k) |theta| Gamma(|theta|).
  double lambda;

  /// c = -lambda (DeathLike) or +lambda (BirthLike).
  FractionalRelaxation problem(double n0, RateSign sign) const;
};

/// Requires theta in (-1, 0) and k < 1.
FractionalMapping to_fractional(const EtasParams& p);

/// n0 E_nu(-+lambda t^nu) sampled on the grid.
SampledFunction rate_curve(const EtasParams& p, double n0, RateSign sign, const TimeGrid& grid);

}  // namespace fracproc
