#include "fracproc/processes.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>

#include "fracproc/error.hpp"
#include "fracproc/laplace.hpp"

namespace fracproc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Budget for the alternating-sum route before falling back to inversion.
constexpr double kDirectBudget = 1e-11;
// Hard limit on the per-state absolute error of a returned pmf.
constexpr double kPrecisionLimit = 1e-10;
constexpr double kClampTolerance = 1e-10;

using cplx = std::complex<double>;

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

// coeff * sum_{r=0..m} C(m,r) (-1)^r f[first + r], with a running error estimate.
Estimate alternating_sum(double coeff, long m, const std::vector<MlfEvaluation>& f,
                         std::size_t first) {
  double sum = 0.0;
  double comp = 0.0;
  double err = 0.0;
  for (long r = 0; r <= m; ++r) {
    const MlfEvaluation& fr = f[first + static_cast<std::size_t>(r)];
    const double c = binomial(m, r);
    const double term = (r % 2 == 0 ? c : -c) * fr.value;
    const double t = sum + term;
    comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    err += c * (fr.est_abs_error + kEps * std::abs(fr.value));
  }
  const double value = coeff * (sum + comp);
  return {value, coeff * err + kEps * std::abs(value)};
}

// Laplace-domain form of the state probabilities. With a = rate * t^nu and
// the process time-rescaled to 1, each probability is the inverse transform
// at 1 of s^(nu-1) * prod_j [c_j / (s^nu + c_j)] / (s^nu + c_state),
// a product of positive-rate factors with no cancellation.
struct InversionPass {
  std::vector<double> fine;
  std::vector<double> coarse;

  Estimate at(std::size_t i) const { return {fine[i], std::abs(fine[i] - coarse[i])}; }
};

// rates[i] is the exit rate (in units of a) of state i along the chain
// order; probability i uses the product over rates[0..i-1] and divides by
// s^nu + rates[i].
std::vector<double> invert_chain(const std::vector<double>& rates, double nu, std::size_t n) {
  const BromwichNodes nodes = make_bromwich_nodes(1.0, n);
  std::vector<double> out(rates.size(), 0.0);
  for (std::size_t q = 0; q < nodes.s.size(); ++q) {
    const cplx s = nodes.s[q];
    const cplx s_nu = std::pow(s, nu);
    cplx prefix = nodes.weight[q] * s_nu / s;  // weight * s^(nu-1)
    for (std::size_t i = 0; i < rates.size(); ++i) {
      const cplx denom = s_nu + rates[i];
      out[i] += std::real(prefix / denom);
      prefix *= rates[i] / denom;
    }
  }
  return out;
}

InversionPass invert_chain_checked(const std::vector<double>& rates, double nu) {
  return {invert_chain(rates, nu, kBromwichFine), invert_chain(rates, nu, kBromwichCoarse)};
}

// Clamps tiny negative cancellation residue; returns true if anything moved.
bool clamp_probabilities(std::vector<double>& probs, const char* who) {
  bool clamped = false;
  for (double& p : probs) {
    if (p < 0.0) {
      if (p < -kClampTolerance)
        throw PrecisionError(std::string(who) + ": negative probability " + std::to_string(p) +
                             " from cancellation");
      p = 0.0;
      clamped = true;
    } else if (p > 1.0) {
      if (p > 1.0 + kClampTolerance)
        throw PrecisionError(std::string(who) + ": probability above 1 from cancellation");
      p = 1.0;
      clamped = true;
    }
  }
  return clamped;
}

// log C(n, k) for the classical closed forms.
double log_binomial(long n, long k) {
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(static_cast<double>(n - k) + 1.0);
}

void require_positive_time(double t, const char* who) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw DomainError(std::string(who) + ": t must be positive and finite");
}

}  // namespace

DeathParams::DeathParams(long n, double rate, FractionalOrder order) : n0(n), mu(rate), nu(order) {
  if (n < 1) throw DomainError("DeathParams: n0 must be >= 1");
  if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("DeathParams: mu must be positive");
}

BirthParams::BirthParams(long n, double rate, FractionalOrder order)
    : n0(n), gamma(rate), nu(order) {
  if (n < 1) throw DomainError("BirthParams: n0 must be >= 1");
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw DomainError("BirthParams: gamma must be positive");
}

double Pmf::at(long state) const {
  if (state < support_offset || state > last_state()) return 0.0;
  return probabilities[static_cast<std::size_t>(state - support_offset)];
}

double Pmf::total() const {
  return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

double Pmf::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i)
    m += static_cast<double>(support_offset + static_cast<long>(i)) * probabilities[i];
  return m;
}

double binomial(long n, long k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  if (n <= 66) {
    unsigned __int128 r = 1;
    for (long i = 0; i < k; ++i) r = r * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
    return static_cast<double>(r);
  }
  return std::exp(log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0));
}

Pmf death_pmf(const DeathParams& p, double t) {
  require_positive_time(t, "death_pmf");
  if (p.n0 > kDeathN0Max)
    throw PrecisionError("death_pmf: n0 = " + std::to_string(p.n0) + " exceeds the cap of " +
                         std::to_string(kDeathN0Max));
  const double a = p.mu * std::pow(t, p.nu.value());
  const auto n0 = static_cast<std::size_t>(p.n0);

  if (p.nu.is_classical()) {
    // The alternating sum collapses to C(n0,k) e^{-ka} (1 - e^{-a})^{n0-k}.
    const double log_survive = -a;
    const double log_die = std::log(-std::expm1(-a));
    Pmf pmf;
    pmf.probabilities.resize(n0 + 1);
    for (std::size_t k = 0; k <= n0; ++k) {
      const auto kl = static_cast<long>(k);
      pmf.probabilities[k] = std::exp(log_binomial(p.n0, kl) + static_cast<double>(kl) * log_survive +
                                      static_cast<double>(p.n0 - kl) * log_die);
    }
    pmf.max_abs_error = 8.0 * static_cast<double>(n0 + 1) * kEps;
    return pmf;
  }

  std::vector<MlfEvaluation> f(n0 + 1);
  for (std::size_t j = 0; j <= n0; ++j) f[j] = mittag_leffler(p.nu, -static_cast<double>(j) * a);

  Pmf pmf;
  pmf.support_offset = 0;
  pmf.probabilities.assign(n0 + 1, 0.0);
  std::vector<Estimate> est(n0 + 1);
  bool need_inversion = false;
  for (std::size_t k = 0; k <= n0; ++k) {
    est[k] = alternating_sum(binomial(p.n0, static_cast<long>(k)), p.n0 - static_cast<long>(k), f, k);
    need_inversion = need_inversion || est[k].error > kDirectBudget;
  }

  if (need_inversion) {
    // Chain order n0, n0-1, ..., 0 with exit rates j a.
    std::vector<double> rates(n0 + 1);
    for (std::size_t i = 0; i <= n0; ++i) rates[i] = static_cast<double>(n0 - i) * a;
    const InversionPass pass = invert_chain_checked(rates, p.nu.value());
    for (std::size_t k = 0; k <= n0; ++k) {
      if (est[k].error <= kDirectBudget) continue;
      const Estimate alt = pass.at(n0 - k);
      if (alt.error < est[k].error) est[k] = alt;
    }
  }

  for (std::size_t k = 0; k <= n0; ++k) {
    if (est[k].error > kPrecisionLimit)
      throw PrecisionError("death_pmf: state " + std::to_string(k) +
                           " cannot be resolved to 1e-10 in double precision");
    pmf.probabilities[k] = est[k].value;
    pmf.max_abs_error = std::max(pmf.max_abs_error, est[k].error);
  }
  if (clamp_probabilities(pmf.probabilities, "death_pmf")) {
    const double total = pmf.total();
    for (double& q : pmf.probabilities) q /= total;
  }
  return pmf;
}

double death_mean(const DeathParams& p, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("death_mean: t must be >= 0");
  if (t == 0.0) return static_cast<double>(p.n0);
  return static_cast<double>(p.n0) * mittag_leffler(p.nu, -p.mu * std::pow(t, p.nu.value())).value;
}

Pmf birth_pmf(const BirthParams& p, double t, std::size_t k_max) {
  require_positive_time(t, "birth_pmf");
  const double a = p.gamma * std::pow(t, p.nu.value());
  const double n0 = static_cast<double>(p.n0);

  Pmf pmf;
  pmf.support_offset = p.n0;
  pmf.probabilities.assign(k_max + 1, 0.0);

  if (p.nu.is_classical()) {
    // Negative binomial: C(n0+k-1,k) e^{-n0 a} (1 - e^{-a})^k.
    const double log_grow = std::log(-std::expm1(-a));
    for (std::size_t k = 0; k <= k_max; ++k) {
      const auto kl = static_cast<long>(k);
      pmf.probabilities[k] =
          std::exp(log_binomial(p.n0 + kl - 1, kl) - n0 * a + static_cast<double>(kl) * log_grow);
    }
    pmf.max_abs_error = 8.0 * static_cast<double>(k_max + 1) * kEps;
    pmf.tail_mass = std::max(0.0, 1.0 - pmf.total());
    return pmf;
  }

  std::vector<Estimate> est(k_max + 1);

  // Direct route while the alternating sum stays within budget; the
  // cancellation only worsens with k, so the first failure ends it.
  std::vector<MlfEvaluation> f;
  std::size_t direct_until = 0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    while (f.size() <= k) f.push_back(mittag_leffler(p.nu, -(n0 + static_cast<double>(f.size())) * a));
    const double coeff = binomial(p.n0 + static_cast<long>(k) - 1, static_cast<long>(k));
    const Estimate e = alternating_sum(coeff, static_cast<long>(k), f, 0);
    if (e.error > kDirectBudget) break;
    est[k] = e;
    direct_until = k + 1;
  }

  if (direct_until <= k_max) {
    std::vector<double> rates(k_max + 1);
    for (std::size_t i = 0; i <= k_max; ++i) rates[i] = (n0 + static_cast<double>(i)) * a;
    const InversionPass pass = invert_chain_checked(rates, p.nu.value());
    for (std::size_t k = direct_until; k <= k_max; ++k) est[k] = pass.at(k);
  }

  for (std::size_t k = 0; k <= k_max; ++k) {
    if (est[k].error > kPrecisionLimit)
      throw PrecisionError("birth_pmf: state n0+" + std::to_string(k) +
                           " cannot be resolved to 1e-10 in double precision");
    pmf.probabilities[k] = est[k].value;
    pmf.max_abs_error = std::max(pmf.max_abs_error, est[k].error);
  }
  clamp_probabilities(pmf.probabilities, "birth_pmf");
  pmf.tail_mass = std::max(0.0, 1.0 - pmf.total());
  return pmf;
}

double birth_mean(const BirthParams& p, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("birth_mean: t must be >= 0");
  if (t == 0.0) return static_cast<double>(p.n0);
  const double x = p.gamma * std::pow(t, p.nu.value());
  try {
    return static_cast<double>(p.n0) * mittag_leffler(p.nu, x).value;
  } catch (const OverflowError& e) {
    throw OverflowError("birth_mean: mean exceeds double range",
                        e.log_value() + std::log(static_cast<double>(p.n0)));
  }
}

OffspringProbability first_offspring_probability(const BirthParams& p, double dt) {
  require_positive_time(dt, "first_offspring_probability");
  const double n0 = static_cast<double>(p.n0);
  const double a = p.gamma * std::pow(dt, p.nu.value());
  OffspringProbability out;
  out.exact = n0 * (mittag_leffler(p.nu, -n0 * a).value - mittag_leffler(p.nu, -(n0 + 1.0) * a).value);
  out.leading_order = n0 * a * reciprocal_gamma(p.nu.value() + 1.0);
  return out;
}

}  // namespace fracproc
