#include "fracproc/montecarlo.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <thread>

#include "fracproc/error.hpp"

namespace fracproc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_horizon(double horizon, const char* who) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw DomainError(std::string(who) + ": horizon must be positive and finite");
}

long death_state_at(long n0, double mu, double horizon, RandomStream& rng) {
  long k = n0;
  double clock = 0.0;
  while (k > 0) {
    clock += rng.exponential() / (mu * static_cast<double>(k));
    if (clock > horizon) break;
    --k;
  }
  return k;
}

long birth_state_at(long n0, double gamma, double horizon, long cap, RandomStream& rng) {
  long k = n0;
  double clock = 0.0;
  while (k < cap) {
    clock += rng.exponential() / (gamma * static_cast<double>(k));
    if (clock > horizon) break;
    ++k;
  }
  return k;
}

// Runs `draw(stream)` for every replica and tallies the returned states.
// Each replica owns stream `index`, so the tally does not depend on how
// replicas are spread over threads.
template <class Draw>
std::map<long, std::uint64_t> tally(const SimulationConfig& sim, const Draw& draw) {
  if (sim.replicas < 1) throw DomainError("simulation: replicas must be >= 1");
  const std::size_t workers = std::clamp<std::size_t>(sim.threads, 1, sim.replicas);
  std::vector<std::map<long, std::uint64_t>> partial(workers);
  std::vector<std::exception_ptr> failures(workers);

  auto run = [&](std::size_t w) {
    try {
      const std::size_t begin = sim.replicas * w / workers;
      const std::size_t end = sim.replicas * (w + 1) / workers;
      for (std::size_t r = begin; r < end; ++r) {
        RandomStream stream = RandomStream::split(sim.seed, r);
        ++partial[w][draw(stream)];
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  std::map<long, std::uint64_t> total;
  for (const auto& m : partial)
    for (const auto& [state, count] : m) total[state] += count;
  return total;
}

// Dense counts from `first` (the model's lowest state) to max(last, largest observed).
EmpiricalLaw to_law(const std::map<long, std::uint64_t>& counts, std::size_t replicas, long first,
                    long last) {
  EmpiricalLaw law;
  law.replicas = replicas;
  law.support_offset = first;
  last = std::max(last, counts.rbegin()->first);
  law.counts.assign(static_cast<std::size_t>(last - first + 1), 0);
  long double sum = 0.0L;
  long double sum_sq = 0.0L;
  for (const auto& [state, count] : counts) {
    law.counts[static_cast<std::size_t>(state - law.support_offset)] = count;
    const long double s = static_cast<long double>(state);
    sum += s * static_cast<long double>(count);
    sum_sq += s * s * static_cast<long double>(count);
  }
  const long double n = static_cast<long double>(replicas);
  const long double mean = sum / n;
  law.mean = static_cast<double>(mean);
  if (replicas > 1) {
    const long double var = std::max(0.0L, (sum_sq - n * mean * mean) / (n - 1.0L));
    law.mean_standard_error = static_cast<double>(std::sqrt(var / n));
  }
  return law;
}

}  // namespace

RandomStream RandomStream::split(RngSeed master, std::uint64_t index) {
  return RandomStream(splitmix64(splitmix64(master.seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

double RandomStream::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::exponential() { return -std::log(uniform()); }

long PathSample::state_at(double t) const {
  const auto it = std::upper_bound(event_times.begin(), event_times.end(), t);
  if (it == event_times.begin()) return initial_state;
  return states[static_cast<std::size_t>(it - event_times.begin()) - 1];
}

SubordinatorConfig::SubordinatorConfig(FractionalOrder order, double step, std::size_t max)
    : nu(order), increment_step(step), max_steps(max) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw DomainError("SubordinatorConfig: increment_step must be positive");
  if (max < 1) throw DomainError("SubordinatorConfig: max_steps must be >= 1");
}

double sample_stable(FractionalOrder nu, RandomStream& rng) {
  if (nu.is_classical())
    throw DomainError("sample_stable: nu = 1 is the degenerate unit drift, nothing to sample");
  const double v = nu.value();
  const double u = std::numbers::pi * rng.uniform();
  const double log_w = std::log(rng.exponential());
  const double sin_u = std::sin(u);
  const double cos_u = std::cos(u);
  const double sin_vu = std::sin(v * u);
  const double cos_vu = std::cos(v * u);
  // sin((1 - v) u) by the difference formula.
  const double sin_rest = sin_u * cos_vu - cos_u * sin_vu;
  const double inv_v = 1.0 / v;
  return std::exp(std::log(sin_vu) - inv_v * std::log(sin_u) +
                  (inv_v - 1.0) * (std::log(sin_rest) - log_w));
}

std::vector<double> sample_inverse_subordinator_path(const SubordinatorConfig& cfg,
                                                     std::span<const double> times,
                                                     RandomStream& rng) {
  std::vector<double> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i]))
      throw DomainError("sample_inverse_subordinator: times must be finite and >= 0");
    if (i > 0 && times[i] < times[i - 1])
      throw DomainError("sample_inverse_subordinator: times must be sorted");
  }
  if (cfg.nu.is_classical()) {
    std::copy(times.begin(), times.end(), out.begin());
    return out;
  }

  // Increments over dx are distributed as dx^(1/nu) S_1.
  const double scale = std::pow(cfg.increment_step, 1.0 / cfg.nu.value());
  double level = 0.0;
  std::size_t steps = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] == 0.0) {
      out[i] = 0.0;
      continue;
    }
    while (level <= times[i]) {
      if (steps >= cfg.max_steps)
        throw NumericalError("sample_inverse_subordinator: stable path did not pass t = " +
                             std::to_string(times[i]) + " within " + std::to_string(cfg.max_steps) +
                             " increments");
      level += scale * sample_stable(cfg.nu, rng);
      ++steps;
    }
    out[i] = static_cast<double>(steps) * cfg.increment_step;
  }
  return out;
}

double sample_inverse_subordinator(const SubordinatorConfig& cfg, double t, RandomStream& rng) {
  if (!(t > 0.0)) throw DomainError("sample_inverse_subordinator: t must be positive");
  return sample_inverse_subordinator_path(cfg, std::span<const double>(&t, 1), rng)[0];
}

PathSample classical_death_path(long n0, double mu, double horizon, RandomStream& rng) {
  if (n0 < 0 || !(mu > 0.0)) throw DomainError("classical_death_path: need n0 >= 0 and mu > 0");
  require_horizon(horizon, "classical_death_path");
  PathSample path;
  path.initial_state = n0;
  path.terminal_time = horizon;
  long k = n0;
  double clock = 0.0;
  while (k > 0) {
    clock += rng.exponential() / (mu * static_cast<double>(k));
    if (clock > horizon) break;
    --k;
    path.event_times.push_back(clock);
    path.states.push_back(k);
  }
  return path;
}

PathSample classical_birth_path(long n0, double gamma, double horizon, long cap, RandomStream& rng) {
  if (n0 < 1 || !(gamma > 0.0)) throw DomainError("classical_birth_path: need n0 >= 1 and gamma > 0");
  require_horizon(horizon, "classical_birth_path");
  PathSample path;
  path.initial_state = n0;
  path.terminal_time = horizon;
  long k = n0;
  double clock = 0.0;
  while (k < cap) {
    clock += rng.exponential() / (gamma * static_cast<double>(k));
    if (clock > horizon) break;
    ++k;
    path.event_times.push_back(clock);
    path.states.push_back(k);
  }
  if (k >= cap) path.terminal_time = clock;
  return path;
}

Pmf EmpiricalLaw::pmf() const {
  Pmf out;
  out.support_offset = support_offset;
  out.probabilities.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    out.probabilities[i] = static_cast<double>(counts[i]) / static_cast<double>(replicas);
  return out;
}

std::vector<double> EmpiricalLaw::standard_errors() const {
  std::vector<double> se(counts.size());
  const double n = static_cast<double>(replicas);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double q = static_cast<double>(counts[i]) / n;
    se[i] = std::sqrt(q * (1.0 - q) / n);
  }
  return se;
}

EmpiricalLaw simulate_death(const DeathParams& p, double horizon, const SubordinatorConfig& cfg,
                            const SimulationConfig& sim) {
  require_horizon(horizon, "simulate_death");
  if (cfg.nu.value() != p.nu.value())
    throw DomainError("simulate_death: subordinator order differs from the process order");
  const auto counts = tally(sim, [&](RandomStream& rng) {
    const double v = sample_inverse_subordinator(cfg, horizon, rng);
    return death_state_at(p.n0, p.mu, v, rng);
  });
  return to_law(counts, sim.replicas, 0, p.n0);
}

EmpiricalLaw simulate_birth(const BirthParams& p, double horizon, const SubordinatorConfig& cfg,
                            const SimulationConfig& sim) {
  require_horizon(horizon, "simulate_birth");
  if (cfg.nu.value() != p.nu.value())
    throw DomainError("simulate_birth: subordinator order differs from the process order");
  if (sim.population_cap < p.n0) throw DomainError("simulate_birth: population cap below n0");
  const auto counts = tally(sim, [&](RandomStream& rng) {
    const double v = sample_inverse_subordinator(cfg, horizon, rng);
    return birth_state_at(p.n0, p.gamma, v, sim.population_cap, rng);
  });
  EmpiricalLaw law = to_law(counts, sim.replicas, p.n0, p.n0);
  if (const auto it = counts.find(sim.population_cap); it != counts.end()) law.cap_hits = it->second;
  return law;
}

TestResult chi_square_test(std::span<const std::uint64_t> counts, std::span<const double> expected,
                           double tail_probability, double min_expected) {
  if (expected.empty()) throw DomainError("chi_square_test: no expected cells");
  double n = 0.0;
  for (auto c : counts) n += static_cast<double>(c);
  if (!(n > 0.0)) throw DomainError("chi_square_test: no observations");

  std::vector<double> obs(expected.size() + 1, 0.0);
  std::vector<double> exp(expected.size() + 1, 0.0);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    obs[i] = i < counts.size() ? static_cast<double>(counts[i]) : 0.0;
    exp[i] = n * expected[i];
  }
  for (std::size_t i = expected.size(); i < counts.size(); ++i) obs.back() += static_cast<double>(counts[i]);
  exp.back() = n * std::max(0.0, tail_probability);

  TestResult r;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (obs[i] > 0.0 && !(exp[i] > 0.0)) {
      // Observed where the model puts no mass.
      r.statistic = std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
      return r;
    }
  }

  std::vector<double> cell_obs;
  std::vector<double> cell_exp;
  double acc_obs = 0.0;
  double acc_exp = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    acc_obs += obs[i];
    acc_exp += exp[i];
    if (acc_exp >= min_expected) {
      cell_obs.push_back(acc_obs);
      cell_exp.push_back(acc_exp);
      acc_obs = acc_exp = 0.0;
    }
  }
  if (acc_exp > 0.0 || acc_obs > 0.0) {
    if (cell_exp.empty()) {
      cell_obs.push_back(acc_obs);
      cell_exp.push_back(acc_exp);
    } else {
      cell_obs.back() += acc_obs;
      cell_exp.back() += acc_exp;
    }
  }

  r.degrees_of_freedom = static_cast<double>(cell_exp.size()) - 1.0;
  for (std::size_t i = 0; i < cell_exp.size(); ++i) {
    if (!(cell_exp[i] > 0.0)) continue;
    const double d = cell_obs[i] - cell_exp[i];
    r.statistic += d * d / cell_exp[i];
  }
  r.p_value = r.degrees_of_freedom > 0.0
                  ? boost::math::gamma_q(0.5 * r.degrees_of_freedom, 0.5 * r.statistic)
                  : 1.0;
  return r;
}

double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 1.18) {
    // Jacobi-theta form, fast for small x.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double sum = 0.0;
    for (int k = 1; k <= 8; ++k) {
      const double m = 2.0 * k - 1.0;
      sum += std::exp(-m * m * pi2 / (8.0 * x * x));
    }
    return 1.0 - std::sqrt(2.0 * std::numbers::pi) / x * sum;
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

TestResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("ks_test: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  const double root = std::sqrt(n);
  TestResult r;
  r.statistic = d;
  r.degrees_of_freedom = n;
  r.p_value = kolmogorov_survival((root + 0.12 + 0.11 / root) * d);
  return r;
}

}  // namespace fracproc
