#pragma once

#include <array>

#include "singode/model.hpp"

namespace singode {

/// A point (x, y, p) of the 1-jet space.
struct JetPoint {
  double x = 0.0;
  double y = 0.0;
  double p = 0.0;

  PlanePoint plane() const { return {x, y}; }
};

/// (dx, dy, dp) = (Delta, p Delta, M); dy == p * dx by construction.
struct FieldValue {
  double dx = 0.0;
  double dy = 0.0;
  double dp = 0.0;

  double norm() const;
};

using Matrix3 = std::array<std::array<double, 3>, 3>;

FieldValue field_eval(const SingularOde& ode, const JetPoint& t);

/// [[Dx, Dy, 0], [p Dx, p Dy, Delta], [Mx, My, Mp]].
Matrix3 jacobian(const SingularOde& ode, const JetPoint& t);

struct Spectrum {
  /// Eigenvalues ordered to match (0, lambda1, lambda2) of the analytic formula.
  std::array<double, 3> eigenvalues{};
  /// |det(J - t I)| at each eigenvalue.
  std::array<double, 3> residuals{};
  double lambda1_analytic = 0.0;
  double lambda2_analytic = 0.0;
};

/// Spectrum of the linear part at a singular point of the lifted field.
///
/// Uses the characteristic cubic t^3 - tr t^2 + s t - det; at a singular point
/// det vanishes, the factor t is divided out and the remaining quadratic is
/// solved. Throws NotSingularPoint if |field| > tol (scaled by the local
/// coefficient magnitude), and when the deflated quadratic has complex roots.
Spectrum spectrum_at_singular(const SingularOde& ode, const JetPoint& t, double tol = 1e-10);

}  // namespace singode
