#pragma once

#include "felphase/scaling.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace felphase {

/// Tensor grid over (theta, wp). theta is periodic on [0, 2pi) with
/// n_theta nodes (node n_theta wraps to node 0); wp is uniform on the closed
/// interval [wp_min, wp_max].
class PhaseSpaceGrid {
public:
  PhaseSpaceGrid(std::size_t n_theta, std::size_t n_wp, double wp_min, double wp_max);

  std::size_t n_theta() const noexcept { return n_theta_; }
  std::size_t n_wp() const noexcept { return n_wp_; }
  double wp_min() const noexcept { return wp_min_; }
  double wp_max() const noexcept { return wp_max_; }
  double theta_step() const noexcept;
  double wp_step() const noexcept;

  double theta(std::size_t i) const noexcept;
  double wp(std::size_t j) const noexcept;
  std::vector<double> theta_nodes() const;
  std::vector<double> wp_nodes() const;

  /// Trapezoidal weight of wp node j (half weight at both ends).
  double wp_weight(std::size_t j) const noexcept;

  bool operator==(const PhaseSpaceGrid&) const = default;

private:
  std::size_t n_theta_;
  std::size_t n_wp_;
  double wp_min_;
  double wp_max_;
};

/// Grid centred on the beam, wide enough for its tails and a full separatrix swing.
PhaseSpaceGrid default_grid(const GaussianMomentum& beam, double epsilon, std::size_t n_theta = 256,
                            std::size_t n_wp = 256);

enum class FieldKind { quantum, classical };

const char* to_string(FieldKind kind) noexcept;

/// Distribution sampled on a PhaseSpaceGrid. Values are stored theta-major:
/// value(i, j) with i the theta index and j the wp index.
class PhaseSpaceField {
public:
  PhaseSpaceField(PhaseSpaceGrid grid, FieldKind kind, double time);
  PhaseSpaceField(PhaseSpaceGrid grid, FieldKind kind, double time, std::vector<double> values);

  const PhaseSpaceGrid& grid() const noexcept { return grid_; }
  FieldKind kind() const noexcept { return kind_; }
  double time() const noexcept { return time_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * grid_.n_wp() + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return values_[i * grid_.n_wp() + j];
  }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  double max_abs() const noexcept;
  double min_value() const noexcept;

private:
  PhaseSpaceGrid grid_;
  FieldKind kind_;
  double time_;
  std::vector<double> values_;
};

/// Trapezoidal double integral of f(theta, wp) * g(theta, wp) over the grid,
/// where g is given as a callable of the node indices.
template <class Weight>
double integrate(const PhaseSpaceField& field, Weight&& weight) {
  const auto& g = field.grid();
  double total = 0.0;
  for (std::size_t i = 0; i < g.n_theta(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < g.n_wp(); ++j)
      row += g.wp_weight(j) * field(i, j) * weight(i, j);
    total += row;
  }
  return total * g.theta_step();
}

/// Total mass (trapezoidal double integral).
double total_mass(const PhaseSpaceField& field);
/// First momentum moment <wp>.
double mean_momentum(const PhaseSpaceField& field);

/// rho(wp)/(2 pi) on every node.
PhaseSpaceField initial_field(const GaussianMomentum& beam, const PhaseSpaceGrid& grid, FieldKind kind);

} // namespace felphase
