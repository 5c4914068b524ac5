#pragma once

#include <cstdint>
#include <optional>

namespace singode {

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

// Last continued-fraction convergent of x whose denominator does not exceed
// max_den. Any fraction within 1/(2 den^2) of x is one of these convergents,
// so for tight tolerances this is the best approximation as well.
Fraction best_rational(double x, std::int64_t max_den);

/// The convergent of x with denominator <= max_den, if it lies within
/// rel_tol * max(1, |x|) of x.
std::optional<Fraction> rational_within(double x, std::int64_t max_den, double rel_tol);

}  // namespace singode
