#pragma once

#include <array>
#include <string>

#include "singode/poly2.hpp"

namespace singode {

/// Right-hand side M(x, y, p) = sum_i mu_i(x, y) p^i, cubic in the slope p.
struct CubicField {
  std::array<Poly2, 4> mu;

  /// Horner's scheme in p.
  double eval(PlanePoint q, double p) const;
  /// Coefficients mu_0(q) .. mu_3(q).
  std::array<double, 4> coefficients_at(PlanePoint q) const;

  double dp(PlanePoint q, double p) const;
  double dx(PlanePoint q, double p) const;
  double dy(PlanePoint q, double p) const;

  friend bool operator==(const CubicField&, const CubicField&) = default;
};

/// Delta(x, y) y'' = M(x, y, y').
struct SingularOde {
  Poly2 delta;
  CubicField m;

  friend bool operator==(const SingularOde&, const SingularOde&) = default;
};

/// ds^2 = a dx^2 + 2b dx dy + c dy^2; degenerate and indefinite metrics allowed.
struct Metric {
  Poly2 a;
  Poly2 b;
  Poly2 c;
};

/// Tangential direction stored as a homogeneous pair (u, v) with slope v/u.
///
/// Normalized so u^2 + v^2 = 1 and the first nonzero component is positive;
/// u == 0 is the vertical direction p = infinity.
class Direction {
 public:
  static Direction from_slope(double p);
  static Direction infinite();
  static Direction from_pair(double u, double v);

  double u() const { return u_; }
  double v() const { return v_; }
  bool is_infinite() const { return u_ == 0.0; }
  /// Slope p; +infinity for the vertical direction.
  double slope() const { return slope_; }

  std::string to_string() const;

  friend bool operator==(const Direction& a, const Direction& b) {
    return a.u_ == b.u_ && a.v_ == b.v_;
  }

 private:
  Direction(double u, double v, double slope) : u_(u), v_(v), slope_(slope) {}

  double u_;
  double v_;
  double slope_;
};

/// Geodesic equation of a (possibly degenerate) metric in coefficient form:
/// Delta = ac - b^2 and mu_i as polynomials in a, b, c and first partials.
/// With this Delta the Levi-Civita geodesics satisfy 2 Delta y'' = M; the
/// zero sets of Delta and mu_i, which is all the analysis uses, agree.
SingularOde geodesic_from_metric(const Metric& g);

/// (mu_0, mu_1, mu_2, mu_3) -> (mu_3, mu_2, mu_1, mu_0).
CubicField reciprocal_cubic(const CubicField& m);

/// The equation seen with x and y interchanged: Delta(y, x) P' = -M*(y, x, P),
/// where P = dx/dy. The vertical direction becomes P = 0.
SingularOde swap_axes(const SingularOde& ode);

}  // namespace singode
