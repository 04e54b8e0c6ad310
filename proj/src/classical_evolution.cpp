#include "felphase/classical_evolution.hpp"

#include "felphase/constants.hpp"
#include "felphase/elliptic.hpp"
#include "felphase/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace felphase {

namespace {

using std::numbers::pi;

// Wrap x into (-pi, pi]; `turns` receives the removed multiple of 2pi.
double wrap(double x, double& turns) {
  turns = std::nearbyint(x / (2.0 * pi));
  double r = x - turns * 2.0 * pi;
  if (r <= -pi) {
    r += 2.0 * pi;
    turns -= 1.0;
  }
  return r;
}

// Bound motion about theta = pi.
PendulumState librate(double phi, double turns, double wp, double H, double eps, double tau) {
  const double root = std::sqrt(eps);
  const double m = std::clamp((H + eps) / (2.0 * eps), 0.0, 1.0);
  const double k = std::sqrt(m);
  if (k == 0.0)
    return {phi + pi + 2.0 * pi * turns, wp};
  const double psi0 = std::atan2(std::sin(0.5 * phi), wp / (2.0 * root));
  const double u = incomplete_F(psi0, m) + root * tau;
  const JacobiValues j = jacobi_elliptic(u, m);
  const double phi_t = 2.0 * std::asin(std::clamp(k * j.sn, -1.0, 1.0));
  return {phi_t + pi + 2.0 * pi * turns, 2.0 * k * root * j.cn};
}

// Open trajectories over the hump; phi = theta - pi kept unwrapped.
PendulumState rotate(double theta, double wp, double H, double eps, double tau) {
  const double root = std::sqrt(eps);
  const double k = std::sqrt((H + eps) / (2.0 * eps));
  const double m = 1.0 / (k * k);
  const double sigma = wp > 0.0 ? 1.0 : -1.0;
  const double psi0 = 0.5 * (theta - pi);
  const double u = incomplete_F(psi0, m) + sigma * k * root * tau;
  const JacobiValues j = jacobi_elliptic(u, m);
  return {2.0 * j.am + pi, 2.0 * sigma * k * root * j.dn};
}

PendulumState on_separatrix(double phi, double turns, double wp, double eps, double tau) {
  const double psi0 = 0.5 * phi;
  if (std::abs(std::abs(psi0) - 0.5 * pi) < 1e-15 || wp == 0.0)
    return {phi + pi + 2.0 * pi * turns, wp}; // unstable equilibrium
  const double root = std::sqrt(eps);
  const double sigma = wp > 0.0 ? 1.0 : -1.0;
  const double u = std::atanh(std::sin(psi0)) + sigma * root * tau;
  const double psi = std::atan(std::sinh(u));
  return {2.0 * psi + pi + 2.0 * pi * turns, 2.0 * sigma * root / std::cosh(u)};
}

template <bool Parallel>
PhaseSpaceField pull_back(const GaussianMomentum& beam, const PhaseSpaceGrid& grid, double tau, double eps) {
  if (!(eps > 0.0))
    throw DomainError("pendulum amplitude eps must be positive");
  PhaseSpaceField field(grid, FieldKind::classical, tau);
  const auto n_theta = static_cast<std::ptrdiff_t>(grid.n_theta());
  const std::size_t n_wp = grid.n_wp();
#pragma omp parallel for schedule(static) if (Parallel)
  for (std::ptrdiff_t ii = 0; ii < n_theta; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < n_wp; ++j) {
      const PendulumState origin = pendulum_flow({grid.theta(i), grid.wp(j)}, -tau, eps);
      field(i, j) = beam.density(origin.wp) / constants::two_pi;
    }
  }
  return field;
}

} // namespace

double PendulumState::energy(double eps) const {
  return 0.5 * wp * wp + eps * std::cos(theta);
}

PendulumState pendulum_flow(PendulumState state, double tau, double eps) {
  if (!(eps > 0.0))
    throw DomainError("pendulum amplitude eps must be positive");
  if (tau == 0.0)
    return state;
  const double H = state.energy(eps);
  double turns = 0.0;
  const double phi = wrap(state.theta - pi, turns);
  if (std::abs(H - eps) < kSeparatrixTolerance * eps)
    return on_separatrix(phi, turns, state.wp, eps, tau);
  if (H < eps)
    return librate(phi, turns, state.wp, H, eps, tau);
  return rotate(state.theta, state.wp, H, eps, tau);
}

double separatrix(double theta, double eps) {
  if (!(eps >= 0.0))
    throw DomainError("pendulum amplitude eps must be non-negative");
  return 2.0 * std::sqrt(eps) * std::abs(std::sin(0.5 * theta));
}

PhaseSpaceField evolve_classical(const GaussianMomentum& beam, const PhaseSpaceGrid& grid, double tau,
                                 double eps) {
  return pull_back<true>(beam, grid, tau, eps);
}

PhaseSpaceField evolve_classical_reference(const GaussianMomentum& beam, const PhaseSpaceGrid& grid,
                                           double tau, double eps) {
  return pull_back<false>(beam, grid, tau, eps);
}

} // namespace felphase
