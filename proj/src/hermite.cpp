#include "felphase/hermite.hpp"

#include <cmath>

namespace felphase {

namespace {
constexpr double kSeriesStop = 1e-12;
constexpr double kXiLimit = 1e-8;
} // namespace

double hermite(int n, double x) {
  if (n <= 0)
    return 1.0;
  double prev = 1.0, cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

SeriesValue odd_hermite_series(double xi, double t, int max_m) {
  SeriesValue out;
  // h_n = H_n / n!
  double h_prev = 1.0;     // h_0
  double h_cur = 2.0 * xi; // h_1
  int n = 1;
  const double t2 = t * t;
  double tpow = 1.0;
  double last = 0.0;
  for (int m = 0; m <= max_m; ++m) {
    while (n < 2 * m + 1) {
      const double h_next = (2.0 * xi * h_cur - 2.0 * h_prev) / (n + 1);
      h_prev = h_cur;
      h_cur = h_next;
      ++n;
    }
    last = tpow * h_cur;
    out.value += last;
    out.terms = m + 1;
    tpow *= t2;
    if (m > 0 && std::abs(last) <= kSeriesStop * std::abs(out.value))
      return out;
  }
  out.converged = std::abs(last) <= kSeriesStop * std::abs(out.value) || last == 0.0;
  return out;
}

SeriesValue odd_hermite_ratio_series(double xi, double t, int max_m) {
  if (std::abs(xi) >= kXiLimit) {
    SeriesValue s = odd_hermite_series(xi, t, max_m);
    s.value /= 2.0 * xi;
    return s;
  }
  // limit: sum_m t^{2m} h_{2m}(0), with h_{2m}(0) = (-1)^m / m!
  SeriesValue out;
  const double t2 = t * t;
  double term = 1.0;
  for (int m = 0; m <= max_m; ++m) {
    if (m > 0)
      term *= -t2 / m;
    out.value += term;
    out.terms = m + 1;
    if (m > 0 && std::abs(term) <= kSeriesStop * std::abs(out.value))
      return out;
  }
  out.converged = std::abs(term) <= kSeriesStop * std::abs(out.value) || term == 0.0;
  return out;
}

} // namespace felphase
