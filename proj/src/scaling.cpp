#include "felphase/scaling.hpp"

#include "felphase/constants.hpp"
#include "felphase/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace felphase {

void ModelConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("alpha must be positive, got " + std::to_string(alpha));
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw DomainError("epsilon must be positive, got " + std::to_string(epsilon));
  if (!(chi >= 0.0) || !std::isfinite(chi))
    throw DomainError("chi must be non-negative, got " + std::to_string(chi));
  if (mathieu_truncation && *mathieu_truncation < 1)
    throw DomainError("mathieu_truncation must be >= 1");
  if (recoil_truncation && *recoil_truncation < 1)
    throw DomainError("recoil_truncation must be >= 1");
  if (series_terms < 1)
    throw DomainError("series_terms must be >= 1");
  for (double t : times)
    if (!(t >= 0.0) || !std::isfinite(t))
      throw DomainError("times must be finite and non-negative, got " + std::to_string(t));
}

GaussianMomentum::GaussianMomentum(double mean, double spread) : mean_(mean), spread_(spread) {
  if (!(spread > 0.0) || !std::isfinite(spread))
    throw DomainError("momentum spread must be positive, got " + std::to_string(spread));
  if (!std::isfinite(mean))
    throw DomainError("mean momentum must be finite");
}

double GaussianMomentum::density(double wp) const noexcept {
  const double x = (wp - mean_) / spread_;
  return std::exp(-0.5 * x * x) / (std::sqrt(constants::two_pi) * spread_);
}

double GaussianMomentum::relative_momentum(double wp) const noexcept {
  return (wp - mean_) / (std::numbers::sqrt2 * spread_);
}

void LabParameters::validate() const {
  const double values[] = {electron_density, wave_number,       initial_field, wiggler_field,
                           wiggler_wavelength, wiggler_parameter, gamma};
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError("laboratory parameters must be strictly positive");
}

DerivedRatios derived_ratios(double alpha, const GaussianMomentum& beam, double tau) {
  if (!(alpha > 0.0))
    throw DomainError("alpha must be positive, got " + std::to_string(alpha));
  const double sqrt_alpha = std::sqrt(alpha);
  return {1.0 / (2.0 * sqrt_alpha * beam.spread()), tau / (2.0 * sqrt_alpha)};
}

double compute_chi(const LabParameters& lab) {
  lab.validate();
  using namespace constants;
  return lab.electron_density * std::sqrt(speed_of_light * lab.wiggler_field) /
         (4.0 * lab.wave_number * vacuum_permittivity * std::pow(lab.initial_field, 1.5));
}

int recoil_truncation_for(const ModelConfig& cfg, const GaussianMomentum& beam) {
  if (cfg.recoil_truncation)
    return *cfg.recoil_truncation;
  // A trapped electron swings across the full separatrix, 4 sqrt(eps) in wp,
  // i.e. 2 sqrt(alpha) recoil steps per unit of wp. Small alpha leaves
  // quantum tails beyond the classical reach, hence the margin.
  const double reach = 4.0 * std::sqrt(cfg.epsilon) + 4.0 * beam.spread();
  return static_cast<int>(std::ceil(2.0 * std::sqrt(cfg.alpha) * reach)) + 6;
}

int mathieu_truncation_for(double alpha, int s_max) {
  return std::max(12, static_cast<int>(std::ceil(2.0 * std::sqrt(alpha))) + s_max + 8);
}

} // namespace felphase
