#include "singode/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace singode {

namespace {

using cd = std::complex<double>;

std::vector<cd> quadratic_roots(double c0, double c1, double c2) {
  const double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc >= 0.0) {
    const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
    if (q == 0.0) return {cd(0.0), cd(0.0)};
    return {cd(q / c2), cd(c0 / q)};
  }
  const double re = -c1 / (2.0 * c2);
  const double im = std::sqrt(-disc) / (2.0 * std::abs(c2));
  return {cd(re, -im), cd(re, im)};
}

std::vector<cd> monic_cubic_roots(double a, double b, double c) {
  const double q = (a * a - 3.0 * b) / 9.0;
  const double r = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
  const double shift = a / 3.0;
  const double q3 = q * q * q;
  if (r * r < q3) {
    const double theta = std::acos(std::clamp(r / std::sqrt(q3), -1.0, 1.0));
    const double m = -2.0 * std::sqrt(q);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return {cd(m * std::cos(theta / 3.0) - shift),
            cd(m * std::cos((theta + two_pi) / 3.0) - shift),
            cd(m * std::cos((theta - two_pi) / 3.0) - shift)};
  }
  const double big_a = -std::copysign(std::cbrt(std::abs(r) + std::sqrt(r * r - q3)), r);
  const double big_b = big_a == 0.0 ? 0.0 : q / big_a;
  const double re = -0.5 * (big_a + big_b) - shift;
  const double im = 0.5 * std::sqrt(3.0) * (big_a - big_b);
  return {cd(big_a + big_b - shift), cd(re, im), cd(re, -im)};
}

double horner(const std::array<double, 4>& c, double p) {
  return ((c[3] * p + c[2]) * p + c[1]) * p + c[0];
}

double horner_dp(const std::array<double, 4>& c, double p) {
  return (3.0 * c[3] * p + 2.0 * c[2]) * p + c[1];
}

double polish(const std::array<double, 4>& c, double p) {
  double best = p;
  double best_f = std::abs(horner(c, p));
  for (int iter = 0; iter < 4 && best_f > 0.0; ++iter) {
    const double d = horner_dp(c, best);
    if (d == 0.0) break;
    const double next = best - horner(c, best) / d;
    const double next_f = std::abs(horner(c, next));
    if (!(next_f < best_f)) break;
    best = next;
    best_f = next_f;
  }
  return best;
}

}  // namespace

std::vector<cd> complex_roots(const std::array<double, 4>& c) {
  if (c[3] != 0.0) return monic_cubic_roots(c[2] / c[3], c[1] / c[3], c[0] / c[3]);
  if (c[2] != 0.0) return quadratic_roots(c[0], c[1], c[2]);
  if (c[1] != 0.0) return {cd(-c[0] / c[1])};
  return {};
}

std::vector<RealRoot> real_roots(const std::array<double, 4>& c, double tol_zero,
                                 double tol_root) {
  std::array<double, 4> cz{};
  for (int k = 0; k < 4; ++k) cz[k] = std::abs(c[k]) <= tol_zero ? 0.0 : c[k];

  // Factor out p = 0 exactly for every vanishing trailing coefficient.
  int zero_mult = 0;
  int degree = 3;
  while (degree >= 0 && cz[degree] == 0.0) --degree;
  if (degree <= 0) return {};
  while (cz[0] == 0.0) {
    ++zero_mult;
    for (int k = 0; k < 3; ++k) cz[k] = cz[k + 1];
    cz[3] = 0.0;
    --degree;
  }

  std::vector<double> reals;
  for (const cd& z : complex_roots(cz)) {
    if (std::abs(z.imag()) <= tol_root * std::max(1.0, std::abs(z.real()))) {
      reals.push_back(z.real());
    }
  }
  for (double& r : reals) r = polish(cz, r);
  for (int k = 0; k < zero_mult; ++k) reals.push_back(0.0);
  std::sort(reals.begin(), reals.end());

  std::vector<RealRoot> out;
  std::size_t start = 0;
  while (start < reals.size()) {
    std::size_t end = start + 1;
    while (end < reals.size() &&
           reals[end] - reals[end - 1] <=
               tol_root * std::max(1.0, std::abs(reals[end]))) {
      ++end;
    }
    const int mult = static_cast<int>(end - start);
    double value = 0.0;
    bool has_exact_zero = false;
    for (std::size_t k = start; k < end; ++k) {
      value += reals[k];
      has_exact_zero = has_exact_zero || reals[k] == 0.0;
    }
    value /= mult;
    // A cluster containing an exact zero root is the zero root.
    if (has_exact_zero) value = 0.0;
    out.push_back({value, mult});
    start = end;
  }
  return out;
}

}  // namespace singode
