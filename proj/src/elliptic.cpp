#include "felphase/elliptic.hpp"

#include "felphase/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace felphase {

namespace {

constexpr int kMaxAgmSteps = 40;

void check_parameter(double m) {
  if (!(m >= 0.0 && m <= 1.0))
    throw DomainError("elliptic parameter m must lie in [0, 1], got " + std::to_string(m));
}

struct Agm {
  std::array<double, kMaxAgmSteps + 1> a{};
  std::array<double, kMaxAgmSteps + 1> c{};
  int steps = 0;
};

Agm agm_sequence(double m) {
  Agm g;
  double a = 1.0, b = std::sqrt(1.0 - m);
  g.a[0] = a;
  g.c[0] = std::sqrt(m);
  while (g.steps < kMaxAgmSteps && std::abs(g.c[g.steps]) > 4.0 * std::numeric_limits<double>::epsilon()) {
    const double an = 0.5 * (a + b);
    const double cn = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    ++g.steps;
    g.a[g.steps] = a;
    g.c[g.steps] = cn;
  }
  return g;
}

} // namespace

double complete_K(double m) {
  check_parameter(m);
  if (m == 1.0)
    return std::numeric_limits<double>::infinity();
  const Agm g = agm_sequence(m);
  return std::numbers::pi / (2.0 * g.a[g.steps]);
}

JacobiValues jacobi_elliptic(double u, double m) {
  check_parameter(m);
  if (m == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech, std::atan(std::sinh(u))};
  }
  if (m == 0.0)
    return {std::sin(u), std::cos(u), 1.0, u};

  // Reduce to |u| <= K: am(u + 2K) = am(u) + pi, sn and cn flip sign.
  const Agm g = agm_sequence(m);
  const double K = std::numbers::pi / (2.0 * g.a[g.steps]);
  const double turns = std::nearbyint(u / (2.0 * K));
  const double ur = u - turns * 2.0 * K;

  double phi = std::ldexp(g.a[g.steps] * ur, g.steps);
  double prev = phi;
  for (int n = g.steps; n > 0; --n) {
    prev = phi;
    phi = 0.5 * (phi + std::asin(g.c[n] * std::sin(phi) / g.a[n]));
  }
  const double sign = std::fmod(turns, 2.0) == 0.0 ? 1.0 : -1.0;
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  const double dn = g.steps > 0 ? cn / std::cos(prev - phi) : 1.0;
  return {sign * sn, sign * cn, dn, phi + turns * std::numbers::pi};
}

double incomplete_F(double phi, double m) {
  check_parameter(m);
  if (m == 1.0) {
    if (std::abs(phi) >= 0.5 * std::numbers::pi)
      throw DomainError("F(phi | 1) diverges for |phi| >= pi/2");
    return std::atanh(std::sin(phi));
  }
  const double turns = std::nearbyint(phi / std::numbers::pi);
  const double reduced = phi - turns * std::numbers::pi;
  const double k = std::sqrt(m);
  return std::ellint_1(k, reduced) + 2.0 * turns * complete_K(m);
}

} // namespace felphase
