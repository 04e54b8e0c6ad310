#pragma once

#include "felphase/hermite.hpp"
#include "felphase/phase_space.hpp"
#include "felphase/scaling.hpp"

namespace felphase {

/// Q(xi) = sum_{m=1}^{M} t^{2m}/(2m+1)! H_{2m+1}(xi)/H_1(xi), t = hbar k/(sqrt2 dp).
SeriesValue q_series(double xi, double t, int max_m);

/// Resummed Q from the Hermite generating function:
/// (1 + Q) H_1(xi) = e^{-t^2} sinh(2 xi t)/t.
double q_closed(double xi, double t);

/// [cos(theta - x) - cos(theta)]/x, finite at x = 0 (limit sin(theta)).
double shear_kernel(double theta, double x);

/// First-order Wigner correction for a Gaussian beam.
double w1_closed(double theta, double wp, double tau, double eps, const GaussianMomentum& beam,
                 double alpha);

/// First-order classical correction; w1_closed = fcl1 (1 + Q).
double fcl1(double theta, double wp, double tau, double eps, const GaussianMomentum& beam);

/// Zeroth order, rho(wp)/(2pi) (independent of theta and tau).
PhaseSpaceField w0(const GaussianMomentum& beam, const PhaseSpaceGrid& grid);

/// w1_closed / fcl1 sampled on a grid.
PhaseSpaceField w1_field(const GaussianMomentum& beam, const PhaseSpaceGrid& grid, double tau, double eps,
                         double alpha);
PhaseSpaceField fcl1_field(const GaussianMomentum& beam, const PhaseSpaceGrid& grid, double tau, double eps);

} // namespace felphase
