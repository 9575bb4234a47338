#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracproc/montecarlo.hpp"
#include "fracproc/processes.hpp"
#include "fracproc/specfun.hpp"

namespace fracproc {

struct GrowthObservation {
  GrowthObservation(std::vector<double> times, std::vector<double> sizes);

  std::vector<double> times;
  std::vector<double> sizes;
};

struct GrowthFit {
  FractionalOrder nu{1.0};
  double gamma = 0.0;
  double n0 = 0.0;
  /// Sum of squared log residuals at the returned parameters.
  double sse = 0.0;
  bool converged = false;
  /// Simplex runs started and the number that met the size tolerance.
  std::size_t starts = 0;
  std::size_t converged_starts = 0;
};

/// n0 E_nu(gamma t^nu) at each time.
std::vector<double> predict_mean(FractionalOrder nu, double gamma, double n0, std::span<const double> times);

struct FitOptions {
  /// Fit n0 as well (profiled exactly); otherwise n0 is pinned so the model
  /// passes through the first observation.
  bool fit_n0 = false;
  double simplex_tolerance = 1e-8;
  std::size_t max_iterations = 4000;
};

/// Least squares in log space over (nu, gamma), multi-started from a grid
/// nu in {0.2, 0.35, ..., 0.95} x gamma log-spaced on [0.01, 100].
GrowthFit fit(const GrowthObservation& obs, const FitOptions& options = {});

/// Log-space objective at (nu, gamma) with n0 chosen as in `fit`.
double fit_objective(const GrowthObservation& obs, double nu, double gamma, bool fit_n0, double* n0_out = nullptr);

struct GrowthEnsemble {
  std::vector<double> times;
  /// paths[r][i]: population of replica r at times[i].
  std::vector<std::vector<long>> paths;
  std::vector<double> mean;
  std::vector<double> standard_error;
  /// Central 90% band (5% and 95% empirical quantiles).
  std::vector<double> lower;
  std::vector<double> upper;
  std::size_t cap_hits = 0;
};

/// Subordinated birth trajectories M(V_t) on the given sorted times, one
/// shared subordinator path per replica.
GrowthEnsemble sample_paths(const BirthParams& p, std::span<const double> times, const SubordinatorConfig& cfg,
                            const SimulationConfig& sim);

}  // namespace fracproc
