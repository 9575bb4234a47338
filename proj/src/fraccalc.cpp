#include "fracproc/fraccalc.hpp"

#include <cmath>
#include <string>

#include "fracproc/error.hpp"

namespace fracproc {

namespace {

// (m + 1)^p - m^p for m = 0..count-1.
std::vector<double> power_differences(double p, std::size_t count) {
  std::vector<double> out(count);
  double lower = 0.0;
  for (std::size_t m = 0; m < count; ++m) {
    const double upper = std::pow(static_cast<double>(m + 1), p);
    out[m] = upper - lower;
    lower = upper;
  }
  return out;
}

}  // namespace

TimeGrid::TimeGrid(double step, std::size_t size) : step_(step), size_(size) {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("TimeGrid: step must be positive");
  if (size < 1) throw DomainError("TimeGrid: needs at least one point");
}

TimeGrid TimeGrid::covering(double horizon, double step) {
  if (!(horizon > 0.0) || !(step > 0.0)) throw DomainError("TimeGrid: horizon and step must be positive");
  const double cells = horizon / step;
  const double rounded = std::round(cells);
  if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells))
    throw DomainError("TimeGrid: horizon is not a whole number of steps");
  return TimeGrid(step, static_cast<std::size_t>(rounded) + 1);
}

TimeGrid TimeGrid::from_points(std::span<const double> points) {
  if (points.size() < 2) throw DomainError("TimeGrid: needs at least two points");
  if (points[0] != 0.0) throw DomainError("TimeGrid: first point must be exactly 0");
  const double step = points[1] - points[0];
  if (!(step > 0.0)) throw DomainError("TimeGrid: points must be strictly increasing");
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double expected = step * static_cast<double>(i);
    if (std::abs(points[i] - expected) > 1e-9 * std::max(step, expected))
      throw DomainError("TimeGrid: non-uniform grid rejected at index " + std::to_string(i));
  }
  return TimeGrid(step, points.size());
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = (*this)[i];
  return out;
}

SampledFunction::SampledFunction(TimeGrid g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
  if (values.size() != grid.size())
    throw DomainError("SampledFunction: value count does not match the grid");
}

FractionalRelaxation::FractionalRelaxation(FractionalOrder order, double c, double n0)
    : nu(order), coefficient(c), initial_value(n0) {
  if (!std::isfinite(c)) throw DomainError("FractionalRelaxation: coefficient must be finite");
  if (!(n0 > 0.0) || !std::isfinite(n0))
    throw DomainError("FractionalRelaxation: initial value must be positive");
}

double FractionalRelaxation::exact(double t) const {
  if (t < 0.0) throw DomainError("FractionalRelaxation::exact: t must be >= 0");
  return initial_value * mittag_leffler(nu, coefficient * std::pow(t, nu.value())).value;
}

SampledFunction riemann_liouville_integral(const SampledFunction& f, double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw DomainError("riemann_liouville_integral: alpha must lie in (0, 2)");
  const std::size_t n = f.grid.size();
  if (n < 2) throw DomainError("riemann_liouville_integral: needs at least two grid points");

  std::vector<double> cell_mean(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) cell_mean[j] = 0.5 * (f.values[j] + f.values[j + 1]);

  const std::vector<double> weights = power_differences(alpha, n - 1);
  const double scale = std::pow(f.grid.step(), alpha) * reciprocal_gamma(alpha + 1.0);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    double acc = 0.0;
    // Cell j = [t_j, t_{j+1}] sits i-1-j cells below t_i.
    for (std::size_t j = 0; j < i; ++j) acc += cell_mean[j] * weights[i - 1 - j];
    out[i] = scale * acc;
  }
  return {f.grid, std::move(out)};
}

SampledFunction caputo_derivative(const SampledFunction& f, FractionalOrder nu) {
  if (nu.is_classical())
    throw DomainError("caputo_derivative: nu = 1 is unsupported, use ordinary differencing");
  const std::size_t n = f.grid.size();
  if (n < 3) throw DomainError("caputo_derivative: needs at least three grid points");

  const double v = nu.value();
  const std::vector<double> weights = power_differences(1.0 - v, n - 1);
  const double scale = std::pow(f.grid.step(), -v) * reciprocal_gamma(2.0 - v);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j) acc += weights[i - 1 - j] * (f.values[j + 1] - f.values[j]);
    out[i] = scale * acc;
  }
  return {f.grid, std::move(out)};
}

SampledFunction solve_relaxation(const FractionalRelaxation& problem, const TimeGrid& grid) {
  const double v = problem.nu.value();
  const double c = problem.coefficient;
  const double n0 = problem.initial_value;
  const std::size_t n = grid.size();

  const double kernel_scale = c * std::pow(grid.step(), v) * reciprocal_gamma(v + 1.0);
  const double diagonal = 1.0 - kernel_scale;
  if (!(diagonal > 0.0))
    throw NumericalError("solve_relaxation: step too large, implicit update is singular "
                         "(1 - c h^nu / Gamma(nu + 1) <= 0)");

  const std::vector<double> weights = power_differences(v, n > 1 ? n - 1 : 1);
  std::vector<double> sol(n);
  sol[0] = n0;
  for (std::size_t i = 1; i < n; ++i) {
    // History: cells j = 0..i-2 use their right-end value sol[j+1].
    double history = 0.0;
    for (std::size_t j = 0; j + 1 < i; ++j) history += weights[i - 1 - j] * sol[j + 1];
    const double next = (n0 + kernel_scale * history) / diagonal;
    if (!std::isfinite(next) || std::abs(next) > 1e300)
      throw OverflowError("solve_relaxation: solution left the double range at t = " +
                              std::to_string(grid[i]),
                          std::log(std::abs(sol[i - 1])));
    sol[i] = next;
  }
  return {grid, std::move(sol)};
}

}  // namespace fracproc
