#include "fracproc/growth.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <tuple>

#include "fracproc/error.hpp"

namespace fracproc {

namespace {

constexpr double kNuMin = 0.01;
constexpr double kPenalty = 1e30;

struct Problem {
  const GrowthObservation* obs;
  bool fit_n0;
};

// x = (nu, log gamma); values outside (kNuMin, 1] are penalized.
double simplex_objective(const gsl_vector* x, void* params) {
  const auto* problem = static_cast<const Problem*>(params);
  const double nu = gsl_vector_get(x, 0);
  const double log_gamma = gsl_vector_get(x, 1);
  if (!(nu > kNuMin && nu <= 1.0) || !(std::abs(log_gamma) < 50.0))
    return kPenalty * (1.0 + std::abs(nu - std::clamp(nu, kNuMin, 1.0)));
  try {
    return fit_objective(*problem->obs, nu, std::exp(log_gamma), problem->fit_n0);
  } catch (const Error&) {
    return kPenalty;
  }
}

struct Candidate {
  double sse;
  double nu;
  double gamma;
  bool converged;

  bool operator<(const Candidate& o) const {
    return std::tie(sse, nu, gamma) < std::tie(o.sse, o.nu, o.gamma);
  }
};

Candidate run_simplex(Problem& problem, double nu, double gamma, const FitOptions& options) {
  using Minimizer = std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)>;
  using Vector = std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)>;
  Minimizer m(gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2), &gsl_multimin_fminimizer_free);
  Vector x(gsl_vector_alloc(2), &gsl_vector_free);
  Vector step(gsl_vector_alloc(2), &gsl_vector_free);
  gsl_vector_set(x.get(), 0, nu);
  gsl_vector_set(x.get(), 1, std::log(gamma));
  gsl_vector_set(step.get(), 0, 0.05);
  gsl_vector_set(step.get(), 1, 0.25);

  gsl_multimin_function f{&simplex_objective, 2, &problem};
  gsl_multimin_fminimizer_set(m.get(), &f, x.get(), step.get());
  bool converged = false;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
    const double size = gsl_multimin_fminimizer_size(m.get());
    if (gsl_multimin_test_size(size, options.simplex_tolerance) == GSL_SUCCESS) {
      converged = true;
      break;
    }
  }
  const gsl_vector* best = gsl_multimin_fminimizer_x(m.get());
  return {gsl_multimin_fminimizer_minimum(m.get()), gsl_vector_get(best, 0), std::exp(gsl_vector_get(best, 1)),
          converged};
}

// Nearest-rank empirical quantile of sorted data.
double quantile(const std::vector<long>& sorted, double q) {
  const double n = static_cast<double>(sorted.size());
  const auto rank = static_cast<std::size_t>(std::max(1.0, std::ceil(q * n)));
  return static_cast<double>(sorted[std::min(rank, sorted.size()) - 1]);
}

}  // namespace

GrowthObservation::GrowthObservation(std::vector<double> t, std::vector<double> s)
    : times(std::move(t)), sizes(std::move(s)) {
  if (times.size() != sizes.size()) throw DomainError("GrowthObservation: times and sizes differ in length");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0) || !std::isfinite(times[i]))
      throw DomainError("GrowthObservation: times must be positive and finite");
    if (i > 0 && !(times[i] > times[i - 1])) throw DomainError("GrowthObservation: times must be increasing");
    if (!(sizes[i] > 0.0) || !std::isfinite(sizes[i]))
      throw DomainError("GrowthObservation: sizes must be positive and finite");
  }
}

std::vector<double> predict_mean(FractionalOrder nu, double gamma, double n0, std::span<const double> times) {
  if (!(gamma > 0.0) || !(n0 > 0.0)) throw DomainError("predict_mean: gamma and n0 must be positive");
  std::vector<double> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0)) throw DomainError("predict_mean: times must be >= 0");
    try {
      out[i] = n0 * mittag_leffler(nu, gamma * std::pow(times[i], nu.value())).value;
    } catch (const OverflowError& e) {
      throw OverflowError("predict_mean: mean exceeds double range at t = " + std::to_string(times[i]),
                          e.log_value() + std::log(n0));
    }
    if (!std::isfinite(out[i]))
      throw OverflowError("predict_mean: mean exceeds double range", std::numeric_limits<double>::infinity());
  }
  return out;
}

double fit_objective(const GrowthObservation& obs, double nu, double gamma, bool fit_n0, double* n0_out) {
  const FractionalOrder order(nu);
  const std::size_t n = obs.times.size();
  std::vector<double> log_model(n);
  for (std::size_t i = 0; i < n; ++i)
    log_model[i] = log_mittag_leffler(order, gamma * std::pow(obs.times[i], nu));

  double log_n0 = 0.0;
  if (fit_n0) {
    for (std::size_t i = 0; i < n; ++i) log_n0 += std::log(obs.sizes[i]) - log_model[i];
    log_n0 /= static_cast<double>(n);
  } else {
    log_n0 = std::log(obs.sizes[0]) - log_model[0];
  }
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = log_n0 + log_model[i] - std::log(obs.sizes[i]);
    sse += r * r;
  }
  if (n0_out) *n0_out = std::exp(log_n0);
  return sse;
}

GrowthFit fit(const GrowthObservation& obs, const FitOptions& options) {
  if (obs.times.size() < 3) throw DomainError("fit: at least three observations are required");
  if (std::all_of(obs.sizes.begin(), obs.sizes.end(), [&](double s) { return s == obs.sizes[0]; }))
    throw DomainError("fit: all sizes are equal, growth parameters are not identifiable");

  Problem problem{&obs, options.fit_n0};
  std::vector<Candidate> results;
  GrowthFit out;
  for (int i = 0; i < 6; ++i) {
    const double nu = 0.2 + 0.15 * i;
    for (int j = 0; j < 9; ++j) {
      const double gamma = std::pow(10.0, -2.0 + 0.5 * j);
      results.push_back(run_simplex(problem, nu, gamma, options));
      ++out.starts;
      out.converged_starts += results.back().converged;
    }
  }
  const Candidate best = *std::min_element(results.begin(), results.end());
  if (!(best.sse < kPenalty)) throw NumericalError("fit: no start produced a finite objective");

  out.nu = FractionalOrder(std::min(best.nu, 1.0));
  out.gamma = best.gamma;
  out.sse = fit_objective(obs, out.nu.value(), out.gamma, options.fit_n0, &out.n0);
  out.converged = best.converged;
  return out;
}

GrowthEnsemble sample_paths(const BirthParams& p, std::span<const double> times, const SubordinatorConfig& cfg,
                            const SimulationConfig& sim) {
  if (sim.replicas < 2) throw DomainError("sample_paths: at least two replicas are required");
  if (times.empty()) throw DomainError("sample_paths: no times");
  if (cfg.nu.value() != p.nu.value())
    throw DomainError("sample_paths: subordinator order differs from the process order");
  if (sim.population_cap < p.n0) throw DomainError("sample_paths: population cap below n0");

  GrowthEnsemble out;
  out.times.assign(times.begin(), times.end());
  out.paths.resize(sim.replicas);
  for (std::size_t r = 0; r < sim.replicas; ++r) {
    RandomStream rng = RandomStream::split(sim.seed, r);
    const std::vector<double> v = sample_inverse_subordinator_path(cfg, times, rng);
    auto& path = out.paths[r];
    path.resize(times.size(), p.n0);
    if (v.back() > 0.0) {
      const PathSample classical = classical_birth_path(p.n0, p.gamma, v.back(), sim.population_cap, rng);
      for (std::size_t i = 0; i < times.size(); ++i) path[i] = classical.state_at(v[i]);
      out.cap_hits += (path.back() >= sim.population_cap);
    }
  }

  const std::size_t m = times.size();
  const double n = static_cast<double>(sim.replicas);
  out.mean.resize(m);
  out.standard_error.resize(m);
  out.lower.resize(m);
  out.upper.resize(m);
  std::vector<long> column(sim.replicas);
  for (std::size_t i = 0; i < m; ++i) {
    long double sum = 0.0L;
    long double sum_sq = 0.0L;
    for (std::size_t r = 0; r < sim.replicas; ++r) {
      column[r] = out.paths[r][i];
      const long double x = static_cast<long double>(column[r]);
      sum += x;
      sum_sq += x * x;
    }
    const long double mean = sum / n;
    const long double var = std::max(0.0L, (sum_sq - n * mean * mean) / (n - 1.0L));
    out.mean[i] = static_cast<double>(mean);
    out.standard_error[i] = static_cast<double>(std::sqrt(var / n));
    std::sort(column.begin(), column.end());
    out.lower[i] = quantile(column, 0.05);
    out.upper[i] = quantile(column, 0.95);
  }
  return out;
}

}  // namespace fracproc
