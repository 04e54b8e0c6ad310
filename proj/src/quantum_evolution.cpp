#include "felphase/quantum_evolution.hpp"

#include "felphase/constants.hpp"
#include "felphase/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <string>

namespace felphase {

namespace {

constexpr double kRhoCutoff = 1e-16;     // relative to the beam peak
constexpr double kAmplitudeFloor = 1e-16;
constexpr double kUnitarityTol = 1e-10;
constexpr double kEdgeTol = 1e-9;

bool is_odd(int s) { return (s & 1) != 0; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Runs body(j) for every j in parallel; the first exception is rethrown.
template <class Body>
void parallel_nodes(std::size_t count, Body&& body) {
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(count); ++j) {
    try {
      body(static_cast<std::size_t>(j));
    } catch (...) {
#pragma omp critical(felphase_failure)
      if (!failure)
        failure = std::current_exception();
    }
  }
  if (failure)
    std::rethrow_exception(failure);
}

void check_window(const GaussianMomentum& beam, const PhaseSpaceGrid& grid) {
  const double tail = grid_tail_mass(beam, grid);
  if (tail > kGridTailMass)
    throw NumericError("momentum window [" + fmt(grid.wp_min()) + ", " + fmt(grid.wp_max()) +
                       "] loses initial mass " + fmt(tail) + " (bound " + fmt(kGridTailMass) +
                       "); widen the grid");
}

} // namespace

BandCache::BandCache(double alpha, int half_width, double epsilon)
    : alpha_(alpha), half_width_(half_width), epsilon_(epsilon) {}

const MathieuBand& BandCache::insert(double nu) {
  auto it = bands_.find(nu);
  if (it == bands_.end())
    it = bands_.try_emplace(nu, solve_bands(nu, alpha_, half_width_, epsilon_)).first;
  return it->second;
}

const MathieuBand& BandCache::require(double nu) const {
  auto it = bands_.find(nu);
  if (it == bands_.end())
    throw NumericError("no cached Mathieu band for nu=" + fmt(nu));
  return it->second;
}

double recoil_exponent(int s, double wp, double alpha) {
  return std::sqrt(alpha) * wp - 0.5 * s;
}

std::complex<double> wigner_weight(int s, double theta, const ScatteringTable& table) {
  std::complex<double> w{0.0, 0.0};
  for (int a = -table.s_max; a <= table.s_max; ++a) {
    const std::complex<double> b = table.at(s - a);
    if (b == 0.0)
      continue;
    w += table.at(a) * std::conj(b) * std::polar(1.0, theta * (2 * a - s));
  }
  return w;
}

std::complex<double> wigner_weight(int s, double theta, double wp, double tau, double alpha,
                                   const BandCache& cache, int s_max) {
  const MathieuBand& band = cache.require(recoil_exponent(s, wp, alpha));
  return wigner_weight(s, theta, scattering_amplitudes(band, tau, s_max));
}

double grid_tail_mass(const GaussianMomentum& beam, const PhaseSpaceGrid& grid) {
  const double scale = std::numbers::sqrt2 * beam.spread();
  return 0.5 * std::erfc((beam.mean() - grid.wp_min()) / scale) +
         0.5 * std::erfc((grid.wp_max() - beam.mean()) / scale);
}

WignerPropagator::WignerPropagator(const GaussianMomentum& beam, const PhaseSpaceGrid& grid,
                                   const ModelConfig& cfg)
    : beam_(beam), grid_(grid), cfg_(cfg) {
  cfg_.validate();
  check_window(beam_, grid_);
  s_max_ = recoil_truncation_for(cfg_, beam_);
  half_width_ = cfg_.mathieu_truncation.value_or(mathieu_truncation_for(cfg_.alpha, s_max_));
  // Recoil term s reads the band family at offset |s|/2 from its centre.
  if (half_width_ < (s_max_ + 1) / 2 + 4)
    throw NumericError("Mathieu truncation R=" + std::to_string(half_width_) +
                       " too small for recoil truncation s_max=" + std::to_string(s_max_) +
                       "; increase R to at least " + std::to_string((s_max_ + 1) / 2 + 4));

  nodes_.resize(grid_.n_wp());
  const double sqrt_alpha = std::sqrt(cfg_.alpha);
  parallel_nodes(grid_.n_wp(), [&](std::size_t j) {
    const double nu0 = sqrt_alpha * grid_.wp(j);
    nodes_[j].integer.emplace(solve_bands(nu0, cfg_.alpha, half_width_, cfg_.epsilon));
    nodes_[j].half.emplace(solve_bands(nu0 - 0.5, cfg_.alpha, half_width_, cfg_.epsilon));
  });
}

PhaseSpaceField WignerPropagator::evolve(double tau, WignerDiagnostics* diagnostics) const {
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw DomainError("evolution time must be finite and non-negative");

  const std::size_t n_theta = grid_.n_theta();
  const auto N = static_cast<long long>(n_theta);
  std::vector<std::complex<double>> harmonic(n_theta);
  for (std::size_t m = 0; m < n_theta; ++m)
    harmonic[m] = std::polar(1.0, grid_.theta(m));

  const int s_max = s_max_;
  const int R = half_width_;
  const int h_max = 3 * s_max;
  const double sqrt_alpha = std::sqrt(cfg_.alpha);
  const double phase_rate = tau / (2.0 * sqrt_alpha);
  const double rho_peak = beam_.density(beam_.mean());

  PhaseSpaceField field(grid_, FieldKind::quantum, tau);
  WignerDiagnostics total;
  total.recoil_truncation = s_max;
  total.mathieu_truncation = R;
  total.term_peak.assign(2 * s_max + 1, 0.0);
  double max_re = 0.0, max_im = 0.0;

  std::exception_ptr failure;
#pragma omp parallel
  {
    WignerDiagnostics local;
    local.term_peak.assign(2 * s_max + 1, 0.0);
    double local_re = 0.0, local_im = 0.0;
    std::vector<std::complex<double>> coeff(2 * h_max + 1);
    std::vector<std::complex<double>> amp(2 * s_max + 1);
    std::vector<std::complex<double>> phase_int(2 * R + 1), phase_half(2 * R + 1);

#pragma omp for schedule(dynamic)
    for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(grid_.n_wp()); ++jj) {
      try {
        const auto j = static_cast<std::size_t>(jj);
        const double wp = grid_.wp(j);
        const MathieuBand& band_int = *nodes_[j].integer;
        const MathieuBand& band_half = *nodes_[j].half;
        for (int c = 0; c <= 2 * R; ++c) {
          phase_int[c] = std::polar(1.0, -band_int.energies()[c] * phase_rate);
          phase_half[c] = std::polar(1.0, -band_half.energies()[c] * phase_rate);
        }
        std::fill(coeff.begin(), coeff.end(), std::complex<double>{});

        for (int s = -s_max; s <= s_max; ++s) {
          const double rho_s = beam_.density(wp - s / (2.0 * sqrt_alpha));
          if (rho_s < kRhoCutoff * rho_peak)
            continue;
          const bool odd = is_odd(s);
          const MathieuBand& band = odd ? band_half : band_int;
          const auto& phase = odd ? phase_half : phase_int;
          const auto& V = band.vectors();
          const int k = odd ? -(s - 1) / 2 : -s / 2;
          const int a_lo = std::max(-s_max, -(R - 2) - k);
          const int a_hi = std::min(s_max, (R - 2) - k);

          // S_a at exponent nu0 + k via the index shift of the cached family.
          std::fill(amp.begin(), amp.end(), std::complex<double>{});
          for (int c = 0; c <= 2 * R; ++c) {
            const double overlap = V(k + R, c);
            if (std::abs(overlap) < kCoefficientTail)
              continue;
            const std::complex<double> weight = overlap * phase[c];
            for (int a = a_lo; a <= a_hi; ++a)
              amp[a + s_max] += weight * V(k + a + R, c);
          }
          double norm = 0.0;
          int b_lo = a_hi + 1, b_hi = a_lo - 1;
          for (int a = a_lo; a <= a_hi; ++a) {
            const double p = std::norm(amp[a + s_max]);
            norm += p;
            if (p > kAmplitudeFloor * kAmplitudeFloor) {
              b_lo = std::min(b_lo, a);
              b_hi = std::max(b_hi, a);
            }
          }
          local.unitarity_defect = std::max(local.unitarity_defect, std::abs(1.0 - norm));
          if (1.0 - norm > kUnitarityTol)
            throw NumericError("scattering amplitudes at nu=" + fmt(recoil_exponent(s, wp, cfg_.alpha)) +
                               " lose norm " + fmt(1.0 - norm) + " at the truncation edge; increase mathieu_truncation (now " +
                               std::to_string(R) + ") or recoil_truncation (now " + std::to_string(s_max) + ")");

          double magnitude = 0.0;
          const int lo = std::max(b_lo, s - b_hi);
          const int hi = std::min(b_hi, s - b_lo);
          for (int a = lo; a <= hi; ++a) {
            const std::complex<double> term = amp[a + s_max] * std::conj(amp[s - a + s_max]);
            coeff[2 * a - s + h_max] += rho_s * term;
            magnitude += std::abs(term);
          }
          magnitude *= rho_s / rho_peak;
          double& peak = local.term_peak[s + s_max];
          peak = std::max(peak, magnitude);
          if (std::abs(s) >= s_max - 1)
            local.edge_term = std::max(local.edge_term, magnitude);
        }

        int h_lo = h_max + 1, h_hi = -h_max - 1;
        for (int h = -h_max; h <= h_max; ++h)
          if (coeff[h + h_max] != 0.0) {
            h_lo = std::min(h_lo, h);
            h_hi = std::max(h_hi, h);
          }
        for (std::size_t i = 0; i < n_theta; ++i) {
          std::complex<double> sum{0.0, 0.0};
          const auto ii = static_cast<long long>(i);
          for (int h = h_lo; h <= h_hi; ++h) {
            long long m = (h * ii) % N;
            if (m < 0)
              m += N;
            sum += coeff[h + h_max] * harmonic[static_cast<std::size_t>(m)];
          }
          const double re = sum.real() / constants::two_pi;
          field(i, j) = re;
          local_re = std::max(local_re, std::abs(re));
          local_im = std::max(local_im, std::abs(sum.imag()) / constants::two_pi);
        }
      } catch (...) {
#pragma omp critical(felphase_failure)
        if (!failure)
          failure = std::current_exception();
      }
    }

#pragma omp critical(felphase_merge)
    {
      max_re = std::max(max_re, local_re);
      max_im = std::max(max_im, local_im);
      total.unitarity_defect = std::max(total.unitarity_defect, local.unitarity_defect);
      total.edge_term = std::max(total.edge_term, local.edge_term);
      for (std::size_t q = 0; q < total.term_peak.size(); ++q)
        total.term_peak[q] = std::max(total.term_peak[q], local.term_peak[q]);
    }
  }
  if (failure)
    std::rethrow_exception(failure);

  total.imaginary_residue = max_re > 0.0 ? max_im / max_re : max_im;
  if (total.edge_term > kEdgeTol)
    throw NumericError("recoil truncation s_max=" + std::to_string(s_max) +
                       " too small: terms at the edge of the recoil sum reach " + fmt(total.edge_term) +
                       " of the beam peak (bound " + fmt(kEdgeTol) + "); increase recoil_truncation");
  if (diagnostics)
    *diagnostics = std::move(total);
  return field;
}

PhaseSpaceField evolve_wigner(const GaussianMomentum& beam, const PhaseSpaceGrid& grid, double tau,
                              const ModelConfig& cfg, WignerDiagnostics* diagnostics) {
  return WignerPropagator(beam, grid, cfg).evolve(tau, diagnostics);
}

PhaseSpaceField evolve_wigner_reference(const GaussianMomentum& beam, const PhaseSpaceGrid& grid,
                                        double tau, const ModelConfig& cfg) {
  cfg.validate();
  check_window(beam, grid);
  if (!(tau >= 0.0))
    throw DomainError("evolution time must be non-negative");
  const int s_max = recoil_truncation_for(cfg, beam);
  const int R = cfg.mathieu_truncation.value_or(mathieu_truncation_for(cfg.alpha, s_max));
  const int table_range = std::min(s_max, R - 2);
  const double sqrt_alpha = std::sqrt(cfg.alpha);
  const double rho_peak = beam.density(beam.mean());

  PhaseSpaceField field(grid, FieldKind::quantum, tau);
  std::vector<std::complex<double>> column(grid.n_theta());
  for (std::size_t j = 0; j < grid.n_wp(); ++j) {
    const double wp = grid.wp(j);
    std::fill(column.begin(), column.end(), std::complex<double>{});
    for (int s = -s_max; s <= s_max; ++s) {
      const double rho_s = beam.density(wp - s / (2.0 * sqrt_alpha));
      if (rho_s < kRhoCutoff * rho_peak)
        continue;
      const MathieuBand band = solve_bands(recoil_exponent(s, wp, cfg.alpha), cfg.alpha, R, cfg.epsilon);
      const ScatteringTable table = scattering_amplitudes(band, tau, table_range);
      for (std::size_t i = 0; i < grid.n_theta(); ++i)
        column[i] += rho_s * wigner_weight(s, grid.theta(i), table);
    }
    for (std::size_t i = 0; i < grid.n_theta(); ++i)
      field(i, j) = column[i].real() / constants::two_pi;
  }
  return field;
}

Marginals marginals(const PhaseSpaceField& field) {
  const auto& g = field.grid();
  Marginals m{std::vector<double>(g.n_theta(), 0.0), std::vector<double>(g.n_wp(), 0.0)};
  for (std::size_t i = 0; i < g.n_theta(); ++i)
    for (std::size_t j = 0; j < g.n_wp(); ++j) {
      const double v = field(i, j);
      m.p_theta[i] += g.wp_weight(j) * v;
      m.p_wp[j] += g.theta_step() * v;
    }
  return m;
}

} // namespace felphase
