#pragma once

#include "felphase/phase_space.hpp"
#include "felphase/scaling.hpp"

#include <string>
#include <utility>
#include <vector>

namespace felphase {

/// d eps / d tau = -chi * int W sin(theta).
double field_rate(const PhaseSpaceField& field, double chi);

/// n-th derivative of sinc^2(x/2) = 2 (1 - cos x)/x^2, sinc(x) = sin(x)/x.
/// Taylor series near the origin, Leibniz closed form elsewhere.
double sinc2_derivative(int n, double x);

/// Small-signal gain of a Gaussian beam, quantum corrections to order M.
/// Momentum integral by adaptive Gauss-Kronrod; NumericError if it does not converge.
double gain_small_signal(const GaussianMomentum& beam, double tau, double alpha, double chi, int M);

/// Cold-beam limit; M = 0 is Madey's gain.
double gain_cold(double wp_bar, double tau, double alpha, double chi, int M);

/// Warm-beam limit (valid for dwp tau >> 1, see `warm_limit_valid`).
double gain_warm(const GaussianMomentum& beam, double tau, double chi, double hk_over_dp, int M);

/// dwp tau >= 5.
bool warm_limit_valid(const GaussianMomentum& beam, double tau);

/// G = -chi (<wp>_tau - <wp>_0). Throws DomainError on grid mismatch.
double gain_from_momentum(const PhaseSpaceField& field_tau, const PhaseSpaceField& field_0, double chi);

/// sqrt( int (W - f)^2 / int (W^2 + f^2) ), in [0, 1].
/// Throws DomainError on grid mismatch, NumericError if both fields vanish.
double distance_dcl(const PhaseSpaceField& w, const PhaseSpaceField& f);

struct GainCurve {
  std::string abscissa; ///< "wp_bar*tau", "wp_bar/dwp" or "tau"
  std::string variant;  ///< "classical", "quantum-corrected(M)" or "numeric"
  std::vector<std::pair<double, double>> samples;
};

/// Location of the largest value among samples (ties keep the first).
std::pair<double, double> curve_maximum(const GainCurve& curve);
std::pair<double, double> curve_minimum(const GainCurve& curve);

} // namespace felphase
