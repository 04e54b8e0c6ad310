#pragma once

namespace felphase {

struct JacobiValues {
  double sn;
  double cn;
  double dn;
  double am; ///< amplitude, continuous in u
};

/// Jacobi elliptic functions of parameter m in [0, 1] by AGM descent.
/// m = 1 uses the hyperbolic limits. Throws DomainError outside [0, 1].
JacobiValues jacobi_elliptic(double u, double m);

/// Complete elliptic integral of the first kind K(m); +infinity at m = 1.
double complete_K(double m);

/// Incomplete integral F(phi | m) for any real phi (quasi-periodic extension).
double incomplete_F(double phi, double m);

} // namespace felphase
