#pragma once

namespace felphase {

/// Partial sum of a power series together with a convergence flag.
struct SeriesValue {
  double value = 0.0;
  bool converged = true; ///< last kept term below 1e-12 of the partial sum
  int terms = 0;
};

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
double hermite(int n, double x);

/// sum_{m=0}^{M} t^{2m}/(2m+1)! H_{2m+1}(xi).
///
/// Evaluated through the scaled recurrence h_n = H_n/n!, which keeps every
/// intermediate bounded for the argument ranges used here.
SeriesValue odd_hermite_series(double xi, double t, int max_m);

/// Same series divided by H_1(xi) = 2 xi, with the removable point xi = 0
/// taken from the analytic limit sum t^{2m} H_{2m}(0)/(2m)!.
SeriesValue odd_hermite_ratio_series(double xi, double t, int max_m);

} // namespace felphase
