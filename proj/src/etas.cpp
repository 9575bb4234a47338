#include "fracproc/etas.hpp"

#include <cmath>
#include <string>

#include "fracproc/error.hpp"

namespace fracproc {

EtasParams::EtasParams(double k_, double theta_, double t0_) : k(k_), theta(theta_), t0(t0_) {
  if (!std::isfinite(k_)) throw DomainError("EtasParams: k must be finite");
  if (!std::isfinite(theta_) || theta_ == 0.0) throw DomainError("EtasParams: theta must be finite and nonzero");
  if (!(t0_ > 0.0) || !std::isfinite(t0_)) throw DomainError("EtasParams: t0 must be positive");
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Subcritical: return "Subcritical";
    case Regime::Supercritical: return "Supercritical";
    case Regime::InfiniteBranching: return "InfiniteBranching";
  }
  return "unknown";
}

namespace {

void require_rate_kernel(const EtasParams& p, const char* who) {
  if (p.k > 1.0) throw DomainError(std::string(who) + ": k > 1 gives a negative kernel");
}

}  // namespace

double kernel(const EtasParams& p, double t) {
  require_rate_kernel(p, "kernel");
  if (t < p.t0) return 0.0;
  return (1.0 - p.k) * p.theta * std::pow(p.t0 / t, p.theta) / t;
}

std::optional<double> branching_ratio(const EtasParams& p) {
  require_rate_kernel(p, "branching_ratio");
  if (p.theta < 0.0) return std::nullopt;
  return 1.0 - p.k;
}

Regime classify_regime(const EtasParams& p) {
  if (p.theta > 0.0 && p.k > 0.0) return Regime::Subcritical;
  if (p.theta > 0.0 && p.k < 0.0) return Regime::Supercritical;
  if (p.theta < 0.0 && p.k > 0.0) return Regime::InfiniteBranching;
  throw DomainError("classify_regime: (k = " + std::to_string(p.k) + ", theta = " + std::to_string(p.theta) +
                    ") is not one of the classified sign patterns");
}

FractionalRelaxation FractionalMapping::problem(double n0, RateSign sign) const {
  return FractionalRelaxation(nu, sign == RateSign::DeathLike ? -lambda : lambda, n0);
}

FractionalMapping to_fractional(const EtasParams& p) {
  if (!(p.theta > -1.0 && p.theta < 0.0))
    throw DomainError("to_fractional: theta must lie in (-1, 0)");
  if (!(p.k < 1.0)) throw DomainError("to_fractional: k must be < 1");
  const double order = -p.theta;
  // |theta| Gamma(|theta|) = Gamma(1 + |theta|).
  const double lambda = (1.0 - p.k) * std::exp(log_gamma(1.0 + order));
  return {FractionalOrder(order), lambda};
}

SampledFunction rate_curve(const EtasParams& p, double n0, RateSign sign, const TimeGrid& grid) {
  const FractionalRelaxation problem = to_fractional(p).problem(n0, sign);
  return SampledFunction::sample(grid, [&](double t) { return problem.exact(t); });
}

}  // namespace fracproc
