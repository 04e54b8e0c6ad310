#pragma once

#include "felphase/mathieu.hpp"
#include "felphase/phase_space.hpp"
#include "felphase/scaling.hpp"

#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace felphase {

/// Bands keyed by exact characteristic exponent. Filled once, then read-only.
class BandCache {
public:
  BandCache(double alpha, int half_width, double epsilon = 1.0);

  /// Solve and store the band for nu unless present.
  const MathieuBand& insert(double nu);
  /// Throws NumericError when nu has not been inserted.
  const MathieuBand& require(double nu) const;
  bool contains(double nu) const { return bands_.count(nu) != 0; }
  std::size_t size() const noexcept { return bands_.size(); }

private:
  double alpha_;
  int half_width_;
  double epsilon_;
  std::map<double, MathieuBand> bands_;
};

/// Exponent of the amplitudes entering recoil term s at momentum wp:
/// nu = sqrt(alpha) wp - s/2.
double recoil_exponent(int s, double wp, double alpha);

/// w_s(theta) = sum_{s'} S_{s'} conj(S_{s-s'}) e^{i theta (2s' - s)},
/// with `table` taken at the exponent returned by `recoil_exponent`.
std::complex<double> wigner_weight(int s, double theta, const ScatteringTable& table);

/// Same, looking the band up in `cache` (throws if it is missing).
std::complex<double> wigner_weight(int s, double theta, double wp, double tau, double alpha,
                                   const BandCache& cache, int s_max);

/// Per-run checks gathered during assembly.
struct WignerDiagnostics {
  int recoil_truncation = 0;
  int mathieu_truncation = 0;
  double imaginary_residue = 0.0; ///< max |Im W| / max |Re W|
  double unitarity_defect = 0.0;  ///< max |1 - sum_a |S_a|^2| over used amplitude sets
  double edge_term = 0.0;         ///< largest term with |s| >= s_max - 1, relative to rho(mean)
  /// max over nodes of rho_s sum_a |S_a S_{s-a}| / rho(mean), index s + s_max
  std::vector<double> term_peak;
};

/// Wigner evolution with the two Mathieu diagonalizations per momentum node
/// (exponents sqrt(alpha) wp and sqrt(alpha) wp - 1/2) cached across times.
/// Assembly is parallel over momentum nodes.
class WignerPropagator {
public:
  WignerPropagator(const GaussianMomentum& beam, const PhaseSpaceGrid& grid, const ModelConfig& cfg);

  PhaseSpaceField evolve(double tau, WignerDiagnostics* diagnostics = nullptr) const;

  int recoil_truncation() const noexcept { return s_max_; }
  int mathieu_truncation() const noexcept { return half_width_; }
  const PhaseSpaceGrid& grid() const noexcept { return grid_; }

private:
  struct NodeBands {
    std::optional<MathieuBand> integer;
    std::optional<MathieuBand> half;
  };

  GaussianMomentum beam_;
  PhaseSpaceGrid grid_;
  ModelConfig cfg_;
  int s_max_;
  int half_width_;
  std::vector<NodeBands> nodes_;
};

/// One-shot wrapper around WignerPropagator.
PhaseSpaceField evolve_wigner(const GaussianMomentum& beam, const PhaseSpaceGrid& grid, double tau,
                              const ModelConfig& cfg, WignerDiagnostics* diagnostics = nullptr);

/// Serial reference: one diagonalization per (node, s), amplitudes from
/// `scattering_amplitudes`, weights from `wigner_weight`. Slow; for testing.
PhaseSpaceField evolve_wigner_reference(const GaussianMomentum& beam, const PhaseSpaceGrid& grid,
                                        double tau, const ModelConfig& cfg);

/// Initial beam mass outside the momentum window; evolution refuses grids
/// where it exceeds kGridTailMass.
double grid_tail_mass(const GaussianMomentum& beam, const PhaseSpaceGrid& grid);
inline constexpr double kGridTailMass = 1e-10;

struct Marginals {
  std::vector<double> p_theta; ///< int dwp W, per theta node
  std::vector<double> p_wp;    ///< int dtheta W, per wp node
};

Marginals marginals(const PhaseSpaceField& field);

} // namespace felphase
