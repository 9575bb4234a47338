#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace fracproc {

/// Quadrature nodes for the Bromwich integral
///   f(t) = 1/(2 pi i) int e^{st} F(s) ds  ~  sum_k Re[weight_k F(s_k)].
/// Trapezoidal rule on the parabola s(u) = mu (1 + iu)^2, u in [-3, 3],
/// mu = pi n / (12 t), step 3 / n (Weideman-Trefethen). Valid when every
/// singularity of F lies on the non-positive real axis. Only the upper half
/// of the contour is stored; conjugate symmetry supplies the rest.
struct BromwichNodes {
  std::vector<std::complex<double>> s;
  std::vector<std::complex<double>> weight;
};

inline BromwichNodes make_bromwich_nodes(double t, std::size_t n) {
  const double nd = static_cast<double>(n);
  const double mu = std::numbers::pi * nd / (12.0 * t);
  const double h = 3.0 / nd;
  BromwichNodes nodes;
  nodes.s.reserve(n + 1);
  nodes.weight.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const std::complex<double> w(1.0, static_cast<double>(k) * h);
    const std::complex<double> s = mu * w * w;
    const double sym = (k == 0) ? 1.0 : 2.0;
    nodes.s.push_back(s);
    nodes.weight.push_back(sym * h * mu / std::numbers::pi * std::exp(s * t) * w);
  }
  return nodes;
}

struct InversionResult {
  double value = 0.0;
  /// |difference| between two quadrature resolutions.
  double est_abs_error = 0.0;
};

/// Resolutions used by invert_laplace; the coarse pass feeds the error estimate.
inline constexpr std::size_t kBromwichFine = 20;
inline constexpr std::size_t kBromwichCoarse = 16;

template <class Transform>
double bromwich_sum(const BromwichNodes& nodes, const Transform& transform) {
  double acc = 0.0;
  for (std::size_t k = 0; k < nodes.s.size(); ++k)
    acc += std::real(nodes.weight[k] * transform(nodes.s[k]));
  return acc;
}

/// Inverse Laplace transform f(t) of `transform` (complex -> complex).
template <class Transform>
InversionResult invert_laplace(const Transform& transform, double t) {
  const double coarse = bromwich_sum(make_bromwich_nodes(t, kBromwichCoarse), transform);
  const double fine = bromwich_sum(make_bromwich_nodes(t, kBromwichFine), transform);
  return {fine, std::abs(fine - coarse)};
}

}  // namespace fracproc
