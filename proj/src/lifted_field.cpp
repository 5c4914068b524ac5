#include "singode/lifted_field.hpp"

#include <algorithm>
#include <cmath>

#include "singode/error.hpp"

namespace singode {

double FieldValue::norm() const { return std::sqrt(dx * dx + dy * dy + dp * dp); }

FieldValue field_eval(const SingularOde& ode, const JetPoint& t) {
  const double d = ode.delta.eval(t.plane());
  return {d, t.p * d, ode.m.eval(t.plane(), t.p)};
}

Matrix3 jacobian(const SingularOde& ode, const JetPoint& t) {
  const PlanePoint q = t.plane();
  const double d = ode.delta.eval(q);
  const double dx = ode.delta.dx().eval(q);
  const double dy = ode.delta.dy().eval(q);
  return {{{dx, dy, 0.0},
           {t.p * dx, t.p * dy, d},
           {ode.m.dx(q, t.p), ode.m.dy(q, t.p), ode.m.dp(q, t.p)}}};
}

namespace {

double det3(const Matrix3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

double shifted_det(Matrix3 a, double t) {
  for (int k = 0; k < 3; ++k) a[k][k] -= t;
  return det3(a);
}

}  // namespace

Spectrum spectrum_at_singular(const SingularOde& ode, const JetPoint& t, double tol) {
  const FieldValue f = field_eval(ode, t);
  const auto c = ode.m.coefficients_at(t.plane());
  double scale = 1.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  if (f.norm() > tol * scale) {
    throw Error(ErrorKind::NotSingularPoint, "lifted field does not vanish at the point");
  }

  const Matrix3 j = jacobian(ode, t);
  const double trace = j[0][0] + j[1][1] + j[2][2];
  const double minors = (j[0][0] * j[1][1] - j[0][1] * j[1][0]) +
                        (j[0][0] * j[2][2] - j[0][2] * j[2][0]) +
                        (j[1][1] * j[2][2] - j[1][2] * j[2][1]);
  // t^2 - trace t + minors = 0 after dividing out the structural zero root.
  double disc = trace * trace - 4.0 * minors;
  const double disc_scale = trace * trace + 4.0 * std::abs(minors);
  if (disc < 0.0) {
    if (-disc > 1e-12 * std::max(disc_scale, 1e-300)) {
      throw Error(ErrorKind::NotSingularPoint, "linear part has complex eigenvalues");
    }
    disc = 0.0;
  }
  double r1, r2;
  if (trace == 0.0 && minors == 0.0) {
    r1 = r2 = 0.0;
  } else {
    const double q = -0.5 * (-trace + std::copysign(std::sqrt(disc), -trace));
    r1 = q;
    r2 = q != 0.0 ? minors / q : 0.0;
  }

  Spectrum s;
  s.lambda1_analytic = j[0][0] + t.p * j[0][1];
  s.lambda2_analytic = j[2][2];
  // Pair the two computed roots with the analytic values.
  const double direct = std::abs(r1 - s.lambda1_analytic) + std::abs(r2 - s.lambda2_analytic);
  const double crossed = std::abs(r2 - s.lambda1_analytic) + std::abs(r1 - s.lambda2_analytic);
  if (crossed < direct) std::swap(r1, r2);
  s.eigenvalues = {0.0, r1, r2};
  for (int k = 0; k < 3; ++k) s.residuals[k] = std::abs(shifted_det(j, s.eigenvalues[k]));
  return s;
}

}  // namespace singode
