#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

namespace singode {

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;
};

enum class Var { X, Y };

/// Exponent pair (i, j) of the monomial x^i y^j.
struct Exponent {
  int i = 0;
  int j = 0;

  int degree() const { return i + j; }
  friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// Graded lexicographic order: total degree first, then higher power of x.
struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.i > b.i;
  }
};

struct Term {
  int i = 0;
  int j = 0;
  double coef = 0.0;
};

/// Sparse bivariate polynomial with real coefficients.
///
/// Stored in canonical form: no coefficient is exactly zero. Iteration,
/// evaluation and serialization all follow graded lexicographic order, so
/// results are reproducible bit for bit.
class Poly2 {
 public:
  using Map = std::map<Exponent, double, GradedLex>;

  Poly2() = default;
  Poly2(std::initializer_list<Term> terms);
  explicit Poly2(const std::vector<Term>& terms);

  static Poly2 constant(double c);
  static Poly2 monomial(int i, int j, double coef = 1.0);
  static Poly2 x() { return monomial(1, 0); }
  static Poly2 y() { return monomial(0, 1); }

  double eval(PlanePoint q) const;
  double eval(double x, double y) const { return eval(PlanePoint{x, y}); }

  Poly2 diff(Var var) const;
  Poly2 dx() const { return diff(Var::X); }
  Poly2 dy() const { return diff(Var::Y); }

  /// f(x, y) -> f(y, x).
  Poly2 swapped() const;

  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  std::size_t size() const { return terms_.size(); }
  double coefficient(int i, int j) const;
  /// Largest absolute coefficient; 0 for the zero polynomial.
  double max_abs_coefficient() const;

  const Map& terms() const { return terms_; }
  std::vector<Term> term_list() const;

  Poly2& operator+=(const Poly2& rhs);
  Poly2& operator-=(const Poly2& rhs);
  Poly2& operator*=(double s);

  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator-(Poly2 a) { return a *= -1.0; }
  friend Poly2 operator*(Poly2 a, double s) { return a *= s; }
  friend Poly2 operator*(double s, Poly2 a) { return a *= s; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend bool operator==(const Poly2& a, const Poly2& b) {
    return a.terms_ == b.terms_;
  }

 private:
  void add_term(Exponent e, double coef);

  Map terms_;
};

}  // namespace singode
