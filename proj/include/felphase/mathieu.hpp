#pragma once

#include <Eigen/Core>

#include <complex>
#include <vector>

namespace felphase {

/// Eigen-decomposition of the Mathieu problem for one characteristic exponent.
///
/// The truncated operator acts on plane waves e^{i(nu+r)theta}, r = -R..R, with
/// diagonal (nu+r)^2 and off-diagonal alpha*epsilon. Band n continues the
/// plane wave e^{i(nu+n)theta} as alpha -> 0, so energy(n) -> (nu+n)^2.
///
/// Internally each band is stored in the fixed basis of the exponent nu
/// (`basis_component(n, j)` is the weight of e^{i(nu+j)theta}); the
/// conventional coefficients of me_{nu+n} follow by the index shift
/// c_r^{nu+n} = basis_component(n, r+n).
class MathieuBand {
public:
  MathieuBand(double nu, double alpha, double epsilon, int half_width, std::vector<double> energies,
              Eigen::MatrixXd vectors);

  double nu() const noexcept { return nu_; }
  double alpha() const noexcept { return alpha_; }
  double epsilon() const noexcept { return epsilon_; }
  int half_width() const noexcept { return half_width_; }
  int size() const noexcept { return 2 * half_width_ + 1; }

  /// E_{nu+n} in units of hbar omega_r.
  double energy(int n) const { return energies_[index(n)]; }
  /// Weight of e^{i(nu+j)theta} in band n.
  double basis_component(int n, int j) const { return vectors_(index(j), index(n)); }
  /// c_r^{nu+n}; zero outside the truncated basis.
  double coefficient(int n, int r) const;

  /// Label given by the largest |component|; agrees with n away from gap openings.
  int dominant_label(int n) const;

  /// Columns are bands ordered n = -R..R, rows are basis indices j = -R..R.
  const Eigen::MatrixXd& vectors() const noexcept { return vectors_; }
  const std::vector<double>& energies() const noexcept { return energies_; }

private:
  std::size_t index(int n) const;

  double nu_;
  double alpha_;
  double epsilon_;
  int half_width_;
  std::vector<double> energies_;
  Eigen::MatrixXd vectors_;
};

/// Solve the truncated Mathieu eigenproblem.
/// Throws NumericError (carrying nu, alpha, R) when the eigen-solver fails.
MathieuBand solve_bands(double nu, double alpha, int half_width, double epsilon = 1.0);

/// Amplitudes S_s^nu(tau) for s = -s_max..s_max.
struct ScatteringTable {
  double nu;
  double tau;
  double alpha;
  int s_max;
  std::vector<std::complex<double>> amplitudes;

  std::complex<double> at(int s) const;
  /// sum_s |S_s|^2
  double norm() const;
};

/// S_s^nu(tau) = sum_n c_{-n}^{nu+n} c_{s-n}^{nu+n} exp(-i E_{nu+n} tau / (2 sqrt(alpha))).
///
/// Throws NumericError when s_max exceeds R - 2 or when the bands that carry
/// the initial plane wave reach the truncation edge.
ScatteringTable scattering_amplitudes(const MathieuBand& band, double tau, int s_max);

/// Coefficients below this magnitude are dropped from band sums.
inline constexpr double kCoefficientTail = 1e-14;

} // namespace felphase
