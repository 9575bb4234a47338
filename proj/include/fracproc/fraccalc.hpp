#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracproc/specfun.hpp"

namespace fracproc {

/// Uniform grid 0, h, 2h, ..., (size-1) h.
class TimeGrid {
public:
  TimeGrid(double step, std::size_t size);

  /// Grid covering [0, horizon] with the given step; horizon must be a
  /// whole number of steps (to 1e-9 relative).
  static TimeGrid covering(double horizon, double step);

  /// Accepts explicit points; rejects anything that is not uniform from 0.
  static TimeGrid from_points(std::span<const double> points);

  double step() const noexcept { return step_; }
  std::size_t size() const noexcept { return size_; }
  double operator[](std::size_t i) const noexcept { return step_ * static_cast<double>(i); }
  double back() const noexcept { return (*this)[size_ - 1]; }
  std::vector<double> points() const;

private:
  double step_;
  std::size_t size_;
};

struct SampledFunction {
  SampledFunction(TimeGrid grid, std::vector<double> values);

  /// Samples `f` on every grid point.
  template <class F>
  static SampledFunction sample(const TimeGrid& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
    return {grid, std::move(v)};
  }

  TimeGrid grid;
  std::vector<double> values;
};

/// D^nu N = coefficient * N, N(0) = initial_value. coefficient < 0 is the
/// death-like (relaxing) case, > 0 the birth-like (growing) case.
struct FractionalRelaxation {
  FractionalRelaxation(FractionalOrder nu, double coefficient, double initial_value);

  FractionalOrder nu;
  double coefficient;
  double initial_value;

  /// Closed-form solution initial_value * E_nu(coefficient t^nu).
  double exact(double t) const;
};

/// Riemann-Liouville integral J^alpha f on f's grid, alpha in (0, 2).
/// Product integration: f is replaced on each cell by the mean of its end
/// values and the power kernel is integrated exactly. J^alpha f(0) = 0.
SampledFunction riemann_liouville_integral(const SampledFunction& f, double alpha);

/// Caputo derivative of order nu in (0, 1) by the L1 scheme (f piecewise
/// linear, kernel integrated exactly). The value at t = 0 is reported as 0.
SampledFunction caputo_derivative(const SampledFunction& f, FractionalOrder nu);

/// Implicit product-rectangle marching for the Volterra form
///   N(t) = n0 + c / Gamma(nu) * int_0^t (t - s)^(nu - 1) N(s) ds.
/// First order; exact at t = 0. Throws NumericalError when the implicit
/// update 1 - c h^nu / Gamma(nu + 1) is not positive and OverflowError
/// when the solution leaves the double range.
SampledFunction solve_relaxation(const FractionalRelaxation& problem, const TimeGrid& grid);

}  // namespace fracproc
