#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "fracproc/processes.hpp"
#include "fracproc/specfun.hpp"

namespace fracproc {

struct RngSeed {
  std::uint64_t seed = 0;
};

/// Random stream used throughout the simulators.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream `index` of the family rooted at `master`.
  static RandomStream split(RngSeed master, std::uint64_t index);

  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Exponential with unit rate.
  double exponential();

 private:
  std::mt19937_64 engine_;
};

/// Classical (nu = 1) chain path: population after each event.
struct PathSample {
  std::vector<double> event_times;
  std::vector<long> states;
  long initial_state = 0;
  double terminal_time = 0.0;

  /// Population at time t in [0, terminal_time].
  long state_at(double t) const;
};

struct SubordinatorConfig {
  SubordinatorConfig(FractionalOrder nu, double increment_step = 1e-3,
                     std::size_t max_steps = 100'000'000);

  FractionalOrder nu;
  /// Operational-time increment of the stable path.
  double increment_step;
  /// Runaway guard on the number of increments per draw.
  std::size_t max_steps;
};

/// One-sided stable variate with E exp(-s S) = exp(-s^nu), Kanter's form.
/// Throws DomainError at nu = 1 (the subordinator is then the unit drift).
double sample_stable(FractionalOrder nu, RandomStream& rng);

/// V_t = inf{x : S_x > t} from a stable path walked in steps of
/// cfg.increment_step; returns the first grid level past t, so the bias is
/// at most one step. For nu = 1 returns t.
double sample_inverse_subordinator(const SubordinatorConfig& cfg, double t, RandomStream& rng);

/// V at every time in `times` (sorted ascending) from one shared path.
std::vector<double> sample_inverse_subordinator_path(const SubordinatorConfig& cfg,
                                                     std::span<const double> times,
                                                     RandomStream& rng);

/// Classical linear death path (rates mu k) on [0, horizon].
PathSample classical_death_path(long n0, double mu, double horizon, RandomStream& rng);

/// Classical linear birth path (rates gamma k) on [0, horizon], stopped early
/// once the population reaches `cap`.
PathSample classical_birth_path(long n0, double gamma, double horizon, long cap, RandomStream& rng);

struct SimulationConfig {
  std::size_t replicas = 100'000;
  RngSeed seed{};
  /// Worker threads; results do not depend on this value.
  unsigned threads = 1;
  /// Birth only: paths stop when the population reaches this size.
  long population_cap = 1'000'000;
};

/// Empirical law of the population at the horizon.
struct EmpiricalLaw {
  long support_offset = 0;
  std::vector<std::uint64_t> counts;
  std::size_t replicas = 0;
  double mean = 0.0;
  double mean_standard_error = 0.0;
  /// Birth paths that reached the population cap (their final state is the cap).
  std::size_t cap_hits = 0;

  Pmf pmf() const;
  /// Binomial standard error of each empirical probability.
  std::vector<double> standard_errors() const;
};

EmpiricalLaw simulate_death(const DeathParams& p, double horizon, const SubordinatorConfig& cfg,
                            const SimulationConfig& sim);

EmpiricalLaw simulate_birth(const BirthParams& p, double horizon, const SubordinatorConfig& cfg,
                            const SimulationConfig& sim);

struct TestResult {
  double statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 0.0;
};

/// Pearson chi-square goodness of fit. `expected` holds model probabilities
/// aligned with `counts`; `tail_probability` is the model mass outside them,
/// matched against zero observed. Adjacent cells are pooled until each
/// expected count is at least `min_expected`.
TestResult chi_square_test(std::span<const std::uint64_t> counts, std::span<const double> expected,
                           double tail_probability = 0.0, double min_expected = 5.0);

/// One-sample Kolmogorov-Smirnov test against a continuous CDF.
TestResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Asymptotic Kolmogorov survival function P(K > x).
double kolmogorov_survival(double x);

}  // namespace fracproc
