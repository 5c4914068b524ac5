#include "singode/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "singode/error.hpp"

namespace singode {

double CubicField::eval(PlanePoint q, double p) const {
  const auto c = coefficients_at(q);
  return ((c[3] * p + c[2]) * p + c[1]) * p + c[0];
}

std::array<double, 4> CubicField::coefficients_at(PlanePoint q) const {
  return {mu[0].eval(q), mu[1].eval(q), mu[2].eval(q), mu[3].eval(q)};
}

double CubicField::dp(PlanePoint q, double p) const {
  const auto c = coefficients_at(q);
  return (3.0 * c[3] * p + 2.0 * c[2]) * p + c[1];
}

double CubicField::dx(PlanePoint q, double p) const {
  return ((mu[3].dx().eval(q) * p + mu[2].dx().eval(q)) * p +
          mu[1].dx().eval(q)) * p + mu[0].dx().eval(q);
}

double CubicField::dy(PlanePoint q, double p) const {
  return ((mu[3].dy().eval(q) * p + mu[2].dy().eval(q)) * p +
          mu[1].dy().eval(q)) * p + mu[0].dy().eval(q);
}

Direction Direction::from_slope(double p) {
  if (std::isinf(p)) return infinite();
  if (std::isnan(p)) throw Error(ErrorKind::InvalidInput, "slope is NaN");
  const double u = 1.0 / std::sqrt(1.0 + p * p);
  return Direction(u, p * u, p);
}

Direction Direction::infinite() {
  return Direction(0.0, 1.0, std::numeric_limits<double>::infinity());
}

Direction Direction::from_pair(double u, double v) {
  if (!std::isfinite(u) || !std::isfinite(v) || (u == 0.0 && v == 0.0)) {
    throw Error(ErrorKind::InvalidInput, "direction pair must be finite and nonzero");
  }
  if (u == 0.0) return infinite();
  return from_slope(v / u);
}

std::string Direction::to_string() const {
  if (is_infinite()) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << slope_;
  return os.str();
}

SingularOde geodesic_from_metric(const Metric& g) {
  const Poly2& a = g.a;
  const Poly2& b = g.b;
  const Poly2& c = g.c;
  const Poly2 ax = a.dx(), ay = a.dy();
  const Poly2 bx = b.dx(), by = b.dy();
  const Poly2 cx = c.dx(), cy = c.dy();

  SingularOde ode;
  ode.delta = a * c - b * b;
  ode.m.mu[0] = a * (ay - 2.0 * bx) + ax * b;
  ode.m.mu[1] = b * (3.0 * ay - 2.0 * bx) + ax * c - 2.0 * (a * cx);
  ode.m.mu[2] = b * (2.0 * by - 3.0 * cx) + 2.0 * (ay * c) - a * cy;
  ode.m.mu[3] = c * (2.0 * by - cx) - b * cy;
  return ode;
}

CubicField reciprocal_cubic(const CubicField& m) {
  return CubicField{{m.mu[3], m.mu[2], m.mu[1], m.mu[0]}};
}

SingularOde swap_axes(const SingularOde& ode) {
  SingularOde out;
  out.delta = ode.delta.swapped();
  for (int j = 0; j < 4; ++j) out.m.mu[j] = -ode.m.mu[3 - j].swapped();
  return out;
}

}  // namespace singode
