#include "felphase/observables.hpp"

#include "felphase/errors.hpp"
#include "felphase/hermite.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace felphase {

namespace {

constexpr double kSeriesRadius = 8.0;

double sinc2_series(int n, double x) {
  // sinc^2(x/2) = sum_j 2 (-1)^j x^{2j} / (2j+2)!
  int j = (n + 1) / 2;
  double power = (2 * j - n == 0) ? 1.0 : x; // x^{2j-n}/(2j-n)!
  double total = 0.0;
  const double x2 = x * x;
  for (int iter = 0; iter < 400; ++iter, ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    const double term = 2.0 * sign * power / ((2.0 * j + 1.0) * (2.0 * j + 2.0));
    total += term;
    const int e = 2 * j - n;
    if (e > std::abs(x) && std::abs(term) < 1e-18 * std::max(1.0, std::abs(total)))
      break;
    power *= x2 / ((e + 1.0) * (e + 2.0));
  }
  return total;
}

double sinc2_leibniz(int n, double x) {
  const double c = std::cos(x), s = std::sin(x);
  const double inv = 1.0 / x;
  double total = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    double u;
    if (k == 0) {
      u = 1.0 - c;
    } else {
      // derivatives of -cos x
      switch (k % 4) {
      case 0: u = -c; break;
      case 1: u = s; break;
      case 2: u = c; break;
      default: u = -s; break;
      }
    }
    const int jv = n - k; // derivative order of x^{-2}
    double v = std::pow(inv, 2 + jv);
    for (int q = 2; q <= jv + 1; ++q)
      v *= q;
    if (jv % 2 == 1)
      v = -v;
    total += binom * u * v;
    binom = binom * (n - k) / (k + 1);
  }
  return 2.0 * total;
}

void require_same_grid(const PhaseSpaceField& a, const PhaseSpaceField& b) {
  if (!(a.grid() == b.grid()))
    throw DomainError("fields live on different grids");
}

} // namespace

double field_rate(const PhaseSpaceField& field, double chi) {
  const auto& g = field.grid();
  return -chi * integrate(field, [&g](std::size_t i, std::size_t) { return std::sin(g.theta(i)); });
}

double sinc2_derivative(int n, double x) {
  if (n < 0)
    throw DomainError("derivative order must be non-negative");
  return std::abs(x) < kSeriesRadius ? sinc2_series(n, x) : sinc2_leibniz(n, x);
}

double gain_small_signal(const GaussianMomentum& beam, double tau, double alpha, double chi, int M) {
  if (!(tau > 0.0))
    throw DomainError("small-signal gain needs tau > 0");
  if (!(alpha > 0.0))
    throw DomainError("alpha must be positive");
  const double dwp = beam.spread();
  const double t = 1.0 / (2.0 * std::sqrt(alpha) * std::numbers::sqrt2 * dwp);
  auto integrand = [&](double wp) {
    const double x = 0.5 * wp * tau;
    const double sinc = std::abs(x) < 1e-8 ? 1.0 : std::sin(x) / x;
    const double series = odd_hermite_series(beam.relative_momentum(wp), t, M).value;
    return sinc * sinc * beam.density(wp) * series;
  };
  double error = 0.0, l1 = 0.0;
  const double lo = beam.mean() - 10.0 * dwp, hi = beam.mean() + 10.0 * dwp;
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, lo, hi, 8, 1e-10, &error, &l1);
  if (!(error <= 1e-9 * l1 + 1e-300))
    throw NumericError("small-signal gain quadrature did not converge (error " + std::to_string(error) +
                       ", L1 " + std::to_string(l1) + ")");
  // d^{2m+1} rho / d wp^{2m+1} = -(sqrt2 dwp)^{-(2m+1)} H_{2m+1}(xi) rho
  return -(chi * tau * tau / 4.0) * integral / (std::numbers::sqrt2 * dwp);
}

double gain_cold(double wp_bar, double tau, double alpha, double chi, int M) {
  if (!(tau > 0.0))
    throw DomainError("cold-beam gain needs tau > 0");
  if (!(alpha > 0.0))
    throw DomainError("alpha must be positive");
  const double recoil = tau / (2.0 * std::sqrt(alpha));
  const double x = wp_bar * tau;
  double total = 0.0, weight = 1.0;
  for (int m = 0; m <= M; ++m) {
    if (m > 0)
      weight *= recoil * recoil / ((2.0 * m) * (2.0 * m + 1.0));
    total += weight * sinc2_derivative(2 * m + 1, x);
  }
  return -(chi * tau * tau * tau / 4.0) * total;
}

double gain_warm(const GaussianMomentum& beam, double tau, double chi, double hk_over_dp, int M) {
  const double dwp = beam.spread();
  const double series =
      odd_hermite_series(beam.mean() / (std::numbers::sqrt2 * dwp), hk_over_dp / std::numbers::sqrt2, M).value;
  return std::numbers::pi * chi * tau * beam.density(0.0) / (2.0 * std::numbers::sqrt2 * dwp) * series;
}

bool warm_limit_valid(const GaussianMomentum& beam, double tau) {
  return beam.spread() * tau >= 5.0;
}

double gain_from_momentum(const PhaseSpaceField& field_tau, const PhaseSpaceField& field_0, double chi) {
  require_same_grid(field_tau, field_0);
  return -chi * (mean_momentum(field_tau) - mean_momentum(field_0));
}

double distance_dcl(const PhaseSpaceField& w, const PhaseSpaceField& f) {
  require_same_grid(w, f);
  const auto& g = w.grid();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < g.n_theta(); ++i)
    for (std::size_t j = 0; j < g.n_wp(); ++j) {
      const double a = w(i, j), b = f(i, j), q = g.wp_weight(j);
      num += q * (a - b) * (a - b);
      den += q * (a * a + b * b);
    }
  if (!(den > 0.0))
    throw NumericError("distance undefined: both fields vanish identically");
  return std::sqrt(num / den);
}

std::pair<double, double> curve_maximum(const GainCurve& curve) {
  if (curve.samples.empty())
    throw DomainError("empty gain curve");
  return *std::max_element(curve.samples.begin(), curve.samples.end(),
                           [](const auto& a, const auto& b) { return a.second < b.second; });
}

std::pair<double, double> curve_minimum(const GainCurve& curve) {
  if (curve.samples.empty())
    throw DomainError("empty gain curve");
  return *std::min_element(curve.samples.begin(), curve.samples.end(),
                           [](const auto& a, const auto& b) { return a.second < b.second; });
}

} // namespace felphase
