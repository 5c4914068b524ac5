#include "singode/rational.hpp"

#include <cmath>
#include <limits>

#include "singode/error.hpp"

namespace singode {

Fraction best_rational(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidInput, "cannot approximate a non-finite value");
  if (max_den < 1) throw Error(ErrorKind::InvalidInput, "denominator bound must be positive");

  const bool negative = x < 0.0;
  long double rest = std::fabs(static_cast<long double>(x));
  std::int64_t prev_num = 0, prev_den = 1;
  std::int64_t num = 1, den = 0;
  Fraction best{static_cast<std::int64_t>(std::floor(static_cast<double>(rest))), 1};

  constexpr long double kMaxTerm = 1e15L;
  for (int iter = 0; iter < 64; ++iter) {
    const long double whole = std::floor(rest);
    if (whole > kMaxTerm) break;
    const auto term = static_cast<std::int64_t>(whole);
    const std::int64_t next_num = term * num + prev_num;
    const std::int64_t next_den = term * den + prev_den;
    if (next_den > max_den) break;
    prev_num = num;
    prev_den = den;
    num = next_num;
    den = next_den;
    best = {num, den};
    const long double frac = rest - whole;
    if (frac < 1e-18L) break;
    rest = 1.0L / frac;
  }
  if (negative) best.num = -best.num;
  return best;
}

std::optional<Fraction> rational_within(double x, std::int64_t max_den, double rel_tol) {
  const Fraction f = best_rational(x, max_den);
  if (std::abs(x - f.value()) <= rel_tol * std::max(1.0, std::abs(x))) return f;
  return std::nullopt;
}

}  // namespace singode
