#pragma once

#include <optional>
#include <vector>

namespace felphase {

/// Dimensionless run parameters.
///
/// alpha is the quantum parameter (potential height over recoil energy),
/// epsilon the normalized laser amplitude (held constant during a run) and
/// chi the field-electron coupling. The two truncations are optional; when
/// unset they are derived from the beam with `recoil_truncation_for` and
/// `mathieu_truncation_for`.
struct ModelConfig {
  double alpha = 1.0;
  double epsilon = 1.0;
  double chi = 1.0;
  std::vector<double> times;
  std::optional<int> mathieu_truncation; ///< R: band half-width of the Fourier basis
  std::optional<int> recoil_truncation;  ///< s_max: largest recoil index kept
  int series_terms = 8;                  ///< M: Hermite / derivative series length

  /// Throws DomainError when an invariant is violated.
  void validate() const;
};

/// Gaussian initial momentum distribution rho(wp).
class GaussianMomentum {
public:
  GaussianMomentum(double mean, double spread);

  double mean() const noexcept { return mean_; }
  double spread() const noexcept { return spread_; }

  double density(double wp) const noexcept;
  /// xi = (wp - mean) / (sqrt(2) spread)
  double relative_momentum(double wp) const noexcept;

private:
  double mean_;
  double spread_;
};

/// Laboratory-frame inputs, SI units.
struct LabParameters {
  double electron_density;   ///< n_el [1/m^3]
  double wave_number;        ///< k [1/m]
  double initial_field;      ///< E_0 [V/m]
  double wiggler_field;      ///< B_0 [T]
  double wiggler_wavelength; ///< lambda_W [m]
  double wiggler_parameter;  ///< a_0
  double gamma;              ///< relativistic factor

  void validate() const;
};

struct DerivedRatios {
  double hk_over_dp;       ///< recoil over momentum spread, 1/(2 sqrt(alpha) dwp)
  double recoil_parameter; ///< omega_r t = tau/(2 sqrt(alpha))
};

DerivedRatios derived_ratios(double alpha, const GaussianMomentum& beam, double tau);

/// Field-electron coupling chi = n_el sqrt(c B_0) / (4 k eps_0 E_0^{3/2}).
double compute_chi(const LabParameters& lab);

/// Number of recoil shifts kept in the Wigner sum.
int recoil_truncation_for(const ModelConfig& cfg, const GaussianMomentum& beam);
/// Fourier half-width R of the Mathieu eigenproblem for a given s_max.
int mathieu_truncation_for(double alpha, int s_max);

} // namespace felphase
