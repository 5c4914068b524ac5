#pragma once

#include <array>
#include <complex>
#include <vector>

namespace singode {

struct RealRoot {
  double value = 0.0;
  int multiplicity = 1;
};

/// All complex roots of c0 + c1 p + c2 p^2 + c3 p^3, closed form.
/// The degree is taken from the highest coefficient that is not exactly zero.
std::vector<std::complex<double>> complex_roots(const std::array<double, 4>& c);

/// Real roots of c0 + c1 p + c2 p^2 + c3 p^3 with multiplicities.
///
/// Coefficients with |c_k| <= tol_zero are treated as zero (leading ones drop
/// the degree, trailing ones factor out exact roots at p = 0). Remaining roots
/// come from the closed-form solution, are Newton-polished, and roots whose
/// imaginary part or mutual distance is within tol_root * max(1, |root|) are
/// merged into one real root of higher multiplicity. Returned in ascending
/// order. The zero polynomial has no roots.
std::vector<RealRoot> real_roots(const std::array<double, 4>& c, double tol_zero,
                                 double tol_root = 1e-7);

}  // namespace singode
