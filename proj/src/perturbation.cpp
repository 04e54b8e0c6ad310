#include "felphase/perturbation.hpp"

#include "felphase/constants.hpp"

#include <cmath>
#include <numbers>

namespace felphase {

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

} // namespace

SeriesValue q_series(double xi, double t, int max_m) {
  SeriesValue s = odd_hermite_ratio_series(xi, t, max_m);
  s.value -= 1.0;
  return s;
}

double q_closed(double xi, double t) {
  if (t == 0.0)
    return 0.0;
  const double arg = 2.0 * xi * t;
  const double shk = std::abs(arg) < 1e-8 ? 1.0 + arg * arg / 6.0 : std::sinh(arg) / arg;
  return std::exp(-t * t) * shk - 1.0;
}

double shear_kernel(double theta, double x) {
  const double half = 0.5 * x;
  return std::sin(theta) * sinc(x) - std::cos(theta) * std::sin(half) * sinc(half);
}

double w1_closed(double theta, double wp, double tau, double eps, const GaussianMomentum& beam,
                 double alpha) {
  const double ratio = 1.0 / (2.0 * std::sqrt(alpha) * beam.spread()); // hbar k / dp
  const double shape = 2.0 * std::sqrt(alpha) * std::exp(-0.5 * ratio * ratio) *
                       std::sinh(ratio * (wp - beam.mean()) / beam.spread());
  return eps * tau * shear_kernel(theta, wp * tau) * shape * beam.density(wp) / constants::two_pi;
}

double fcl1(double theta, double wp, double tau, double eps, const GaussianMomentum& beam) {
  const double h1 = 2.0 * beam.relative_momentum(wp);
  return eps * tau * shear_kernel(theta, wp * tau) * h1 / (std::numbers::sqrt2 * beam.spread()) *
         beam.density(wp) / constants::two_pi;
}

PhaseSpaceField w0(const GaussianMomentum& beam, const PhaseSpaceGrid& grid) {
  return initial_field(beam, grid, FieldKind::quantum);
}

PhaseSpaceField w1_field(const GaussianMomentum& beam, const PhaseSpaceGrid& grid, double tau, double eps,
                         double alpha) {
  PhaseSpaceField field(grid, FieldKind::quantum, tau);
  for (std::size_t i = 0; i < grid.n_theta(); ++i)
    for (std::size_t j = 0; j < grid.n_wp(); ++j)
      field(i, j) = w1_closed(grid.theta(i), grid.wp(j), tau, eps, beam, alpha);
  return field;
}

PhaseSpaceField fcl1_field(const GaussianMomentum& beam, const PhaseSpaceGrid& grid, double tau, double eps) {
  PhaseSpaceField field(grid, FieldKind::classical, tau);
  for (std::size_t i = 0; i < grid.n_theta(); ++i)
    for (std::size_t j = 0; j < grid.n_wp(); ++j)
      field(i, j) = fcl1(grid.theta(i), grid.wp(j), tau, eps, beam);
  return field;
}

} // namespace felphase
