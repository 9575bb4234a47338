#pragma once

#include <cstddef>
#include <vector>

#include "fracproc/specfun.hpp"

namespace fracproc {

/// Fractional linear death process M^nu(t): n0 individuals, death rates mu k.
struct DeathParams {
  DeathParams(long n0, double mu, FractionalOrder nu);

  long n0;
  double mu;
  FractionalOrder nu;
};

/// Fractional linear pure birth process: n0 founders, birth rates gamma k.
struct BirthParams {
  BirthParams(long n0, double gamma, FractionalOrder nu);

  long n0;
  double gamma;
  FractionalOrder nu;
};

/// Probabilities of states support_offset, support_offset + 1, ...
struct Pmf {
  long support_offset = 0;
  std::vector<double> probabilities;
  /// Mass outside the stored support (nonzero only for truncated laws).
  double tail_mass = 0.0;
  /// Largest per-state error estimate before clamping.
  double max_abs_error = 0.0;

  long last_state() const { return support_offset + static_cast<long>(probabilities.size()) - 1; }
  /// 0 outside the stored support.
  double at(long state) const;
  double total() const;
  /// Mean over the stored support only.
  double mean() const;
};

/// Largest n0 accepted by death_pmf.
inline constexpr long kDeathN0Max = 30;

/// p_k(t) = C(n0,k) sum_r C(n0-k,r) (-1)^r E_nu(-(k+r) mu t^nu), k = 0..n0.
///
/// Each alternating sum is carried with its error estimate; when that
/// estimate exceeds 1e-11 the state is recomputed from the equivalent
/// cancellation-free Laplace-inversion form. Throws PrecisionError when
/// n0 > kDeathN0Max or when neither route reaches 1e-10.
Pmf death_pmf(const DeathParams& p, double t);

/// n0 E_nu(-mu t^nu).
double death_mean(const DeathParams& p, double t);

/// Pr{N(t) = n0 + k} = C(n0+k-1,k) sum_r C(k,r) (-1)^r E_nu(-(n0+r) gamma t^nu)
/// for k = 0..k_max. The tail beyond k_max is reported, not stored.
Pmf birth_pmf(const BirthParams& p, double t, std::size_t k_max);

/// n0 E_nu(gamma t^nu). Throws OverflowError when not representable.
double birth_mean(const BirthParams& p, double t);

struct OffspringProbability {
  double exact = 0.0;
  double leading_order = 0.0;
};

/// Probability of exactly one birth by time dt and its small-dt form
/// n0 gamma dt^nu / Gamma(nu + 1).
OffspringProbability first_offspring_probability(const BirthParams& p, double dt);

/// Exact binomial coefficient as a double (log-space beyond 2^53).
double binomial(long n, long k);

}  // namespace fracproc
