#pragma once

#include "felphase/phase_space.hpp"
#include "felphase/scaling.hpp"

namespace felphase {

/// Point in pendulum phase space. theta is not wrapped, so trajectories
/// stay continuous across 2pi.
struct PendulumState {
  double theta;
  double wp;

  /// H = wp^2/2 + eps cos(theta)
  double energy(double eps) const;
};

/// Exact flow of theta' = wp, wp' = eps sin(theta) over time tau (either sign).
///
/// Libration, rotation and the separatrix are handled by separate closed
/// forms; the separatrix branch is taken when |H - eps| < 1e-12 eps.
PendulumState pendulum_flow(PendulumState state, double tau, double eps);

/// Positive branch of the separatrix, 2 sqrt(eps) |sin(theta/2)|.
double separatrix(double theta, double eps);

/// rho(wp0)/(2pi) pulled back along the flow, parallel over nodes.
PhaseSpaceField evolve_classical(const GaussianMomentum& beam, const PhaseSpaceGrid& grid, double tau,
                                 double eps);

/// Serial version of evolve_classical.
PhaseSpaceField evolve_classical_reference(const GaussianMomentum& beam, const PhaseSpaceGrid& grid,
                                           double tau, double eps);

inline constexpr double kSeparatrixTolerance = 1e-12;

} // namespace felphase
