#include "felphase/phase_space.hpp"

#include "felphase/constants.hpp"
#include "felphase/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace felphase {

PhaseSpaceGrid::PhaseSpaceGrid(std::size_t n_theta, std::size_t n_wp, double wp_min, double wp_max)
    : n_theta_(n_theta), n_wp_(n_wp), wp_min_(wp_min), wp_max_(wp_max) {
  if (n_theta < 8 || n_wp < 8)
    throw DomainError("grid needs at least 8 nodes per axis, got " + std::to_string(n_theta) + "x" +
                      std::to_string(n_wp));
  if (!(wp_min < wp_max) || !std::isfinite(wp_min) || !std::isfinite(wp_max))
    throw DomainError("momentum range must satisfy wp_min < wp_max");
}

double PhaseSpaceGrid::theta_step() const noexcept {
  return constants::two_pi / static_cast<double>(n_theta_);
}

double PhaseSpaceGrid::wp_step() const noexcept {
  return (wp_max_ - wp_min_) / static_cast<double>(n_wp_ - 1);
}

double PhaseSpaceGrid::theta(std::size_t i) const noexcept {
  return theta_step() * static_cast<double>(i % n_theta_);
}

double PhaseSpaceGrid::wp(std::size_t j) const noexcept {
  if (j + 1 == n_wp_)
    return wp_max_;
  return wp_min_ + wp_step() * static_cast<double>(j);
}

std::vector<double> PhaseSpaceGrid::theta_nodes() const {
  std::vector<double> nodes(n_theta_);
  for (std::size_t i = 0; i < n_theta_; ++i)
    nodes[i] = theta(i);
  return nodes;
}

std::vector<double> PhaseSpaceGrid::wp_nodes() const {
  std::vector<double> nodes(n_wp_);
  for (std::size_t j = 0; j < n_wp_; ++j)
    nodes[j] = wp(j);
  return nodes;
}

double PhaseSpaceGrid::wp_weight(std::size_t j) const noexcept {
  const double h = wp_step();
  return (j == 0 || j + 1 == n_wp_) ? 0.5 * h : h;
}

PhaseSpaceGrid default_grid(const GaussianMomentum& beam, double epsilon, std::size_t n_theta,
                            std::size_t n_wp) {
  // Beam tails plus a full separatrix swing, plus room for recoil sidebands.
  const double reach = 6.0 * beam.spread() + 4.0 * std::sqrt(epsilon) + 2.0;
  const double lo = beam.mean() - reach;
  const double hi = beam.mean() + reach;
  return PhaseSpaceGrid(n_theta, n_wp, lo, hi);
}

const char* to_string(FieldKind kind) noexcept {
  return kind == FieldKind::quantum ? "quantum" : "classical";
}

PhaseSpaceField::PhaseSpaceField(PhaseSpaceGrid grid, FieldKind kind, double time)
    : grid_(grid), kind_(kind), time_(time), values_(grid.n_theta() * grid.n_wp(), 0.0) {}

PhaseSpaceField::PhaseSpaceField(PhaseSpaceGrid grid, FieldKind kind, double time,
                                 std::vector<double> values)
    : grid_(grid), kind_(kind), time_(time), values_(std::move(values)) {
  if (values_.size() != grid_.n_theta() * grid_.n_wp())
    throw DomainError("field value count does not match the grid");
}

double PhaseSpaceField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_)
    m = std::max(m, std::abs(v));
  return m;
}

double PhaseSpaceField::min_value() const noexcept {
  return *std::min_element(values_.begin(), values_.end());
}

double total_mass(const PhaseSpaceField& field) {
  return integrate(field, [](std::size_t, std::size_t) { return 1.0; });
}

double mean_momentum(const PhaseSpaceField& field) {
  const auto& g = field.grid();
  return integrate(field, [&g](std::size_t, std::size_t j) { return g.wp(j); });
}

PhaseSpaceField initial_field(const GaussianMomentum& beam, const PhaseSpaceGrid& grid, FieldKind kind) {
  PhaseSpaceField field(grid, kind, 0.0);
  for (std::size_t j = 0; j < grid.n_wp(); ++j) {
    const double v = beam.density(grid.wp(j)) / constants::two_pi;
    for (std::size_t i = 0; i < grid.n_theta(); ++i)
      field(i, j) = v;
  }
  return field;
}

} // namespace felphase
