#include "felphase/mathieu.hpp"

#include "felphase/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace felphase {

namespace {

std::string describe(double nu, double alpha, int half_width) {
  std::ostringstream os;
  os.precision(17);
  os << "nu=" << nu << ", alpha=" << alpha << ", R=" << half_width;
  return os.str();
}

} // namespace

MathieuBand::MathieuBand(double nu, double alpha, double epsilon, int half_width,
                         std::vector<double> energies, Eigen::MatrixXd vectors)
    : nu_(nu), alpha_(alpha), epsilon_(epsilon), half_width_(half_width),
      energies_(std::move(energies)), vectors_(std::move(vectors)) {}

std::size_t MathieuBand::index(int n) const {
  if (n < -half_width_ || n > half_width_)
    throw DomainError("band index " + std::to_string(n) + " outside truncation " +
                      std::to_string(half_width_));
  return static_cast<std::size_t>(n + half_width_);
}

double MathieuBand::coefficient(int n, int r) const {
  const int j = r + n;
  if (j < -half_width_ || j > half_width_)
    return 0.0;
  return basis_component(n, j);
}

int MathieuBand::dominant_label(int n) const {
  Eigen::Index row = 0;
  vectors_.col(static_cast<Eigen::Index>(index(n))).cwiseAbs().maxCoeff(&row);
  return static_cast<int>(row) - half_width_;
}

MathieuBand solve_bands(double nu, double alpha, int half_width, double epsilon) {
  if (half_width < 1)
    throw DomainError("Mathieu truncation must be >= 1 (" + describe(nu, alpha, half_width) + ")");
  if (!(alpha >= 0.0) || !std::isfinite(alpha) || !std::isfinite(nu))
    throw DomainError("invalid Mathieu parameters (" + describe(nu, alpha, half_width) + ")");

  const int size = 2 * half_width + 1;
  Eigen::VectorXd diag(size);
  Eigen::VectorXd off = Eigen::VectorXd::Constant(size - 1, alpha * epsilon);
  for (int j = 0; j < size; ++j) {
    const double p = nu + (j - half_width);
    diag(j) = p * p;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw NumericError("Mathieu eigen-solver failed (" + describe(nu, alpha, half_width) + ")");

  // Eigenvalues of a Jacobi matrix never cross along alpha, so the k-th
  // smallest eigenvalue continues the k-th smallest diagonal entry. Ties
  // (nu in Z/2) go to the more negative momentum first.
  std::vector<int> order(size);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&diag](int a, int b) {
    if (diag(a) != diag(b))
      return diag(a) < diag(b);
    return a < b;
  });

  std::vector<double> energies(size);
  Eigen::MatrixXd vectors(size, size);
  for (int k = 0; k < size; ++k) {
    const int slot = order[k];
    energies[slot] = solver.eigenvalues()(k);
    Eigen::VectorXd v = solver.eigenvectors().col(k);
    Eigen::Index dominant = 0;
    v.cwiseAbs().maxCoeff(&dominant);
    if (v(dominant) < 0.0)
      v = -v;
    vectors.col(slot) = v;
  }
  return MathieuBand(nu, alpha, epsilon, half_width, std::move(energies), std::move(vectors));
}

std::complex<double> ScatteringTable::at(int s) const {
  if (s < -s_max || s > s_max)
    return {0.0, 0.0};
  return amplitudes[static_cast<std::size_t>(s + s_max)];
}

double ScatteringTable::norm() const {
  double total = 0.0;
  for (const auto& a : amplitudes)
    total += std::norm(a);
  return total;
}

ScatteringTable scattering_amplitudes(const MathieuBand& band, double tau, int s_max) {
  const int R = band.half_width();
  if (s_max < 0 || s_max > R - 2)
    throw NumericError("recoil range s_max=" + std::to_string(s_max) +
                       " does not fit inside the Mathieu truncation; increase R to at least " +
                       std::to_string(s_max + 2) + " (" + describe(band.nu(), band.alpha(), R) + ")");

  const double phase_rate = 1.0 / (2.0 * std::sqrt(band.alpha()));
  const auto& V = band.vectors();
  double edge_leak = 0.0;

  ScatteringTable table{band.nu(), tau, band.alpha(), s_max,
                        std::vector<std::complex<double>>(2 * s_max + 1)};
  for (int n = -R; n <= R; ++n) {
    const int col = n + R;
    const double overlap = V(R, col); // c_{-n}^{nu+n}
    if (std::abs(overlap) < kCoefficientTail)
      continue;
    edge_leak += std::abs(overlap) * (std::abs(V(0, col)) + std::abs(V(2 * R, col)));
    const std::complex<double> phase = std::polar(1.0, -band.energy(n) * tau * phase_rate);
    const std::complex<double> weight = overlap * phase;
    for (int s = -s_max; s <= s_max; ++s)
      table.amplitudes[static_cast<std::size_t>(s + s_max)] += weight * V(s + R, col);
  }
  if (edge_leak > 1e-10)
    throw NumericError("Mathieu truncation too small: bands carrying the initial momentum reach the "
                       "basis edge (leak " +
                       std::to_string(edge_leak) + "); increase R (" +
                       describe(band.nu(), band.alpha(), R) + ")");
  return table;
}

} // namespace felphase
