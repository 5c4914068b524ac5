#include "singode/poly2.hpp"

#include <algorithm>
#include <cmath>

#include "singode/error.hpp"

namespace singode {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotOnLocus: return "NotOnLocus";
    case ErrorKind::NonTransversal: return "NonTransversal";
    case ErrorKind::DegenerateEigen: return "DegenerateEigen";
    case ErrorKind::NotSingularPoint: return "NotSingularPoint";
    case ErrorKind::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorKind::SeedRejected: return "SeedRejected";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

double ipow(double base, int e) {
  double r = 1.0;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

}  // namespace

Poly2::Poly2(std::initializer_list<Term> terms) {
  for (const Term& t : terms) add_term({t.i, t.j}, t.coef);
}

Poly2::Poly2(const std::vector<Term>& terms) {
  for (const Term& t : terms) add_term({t.i, t.j}, t.coef);
}

Poly2 Poly2::constant(double c) { return Poly2{{0, 0, c}}; }

Poly2 Poly2::monomial(int i, int j, double coef) { return Poly2{{i, j, coef}}; }

void Poly2::add_term(Exponent e, double coef) {
  if (e.i < 0 || e.j < 0) {
    throw Error(ErrorKind::InvalidInput, "negative exponent in polynomial term");
  }
  if (!std::isfinite(coef)) {
    throw Error(ErrorKind::InvalidInput, "non-finite polynomial coefficient");
  }
  if (coef == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(e, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Poly2::eval(PlanePoint q) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) sum += c * ipow(q.x, e.i) * ipow(q.y, e.j);
  return sum;
}

Poly2 Poly2::diff(Var var) const {
  Poly2 out;
  for (const auto& [e, c] : terms_) {
    if (var == Var::X && e.i > 0) {
      out.add_term({e.i - 1, e.j}, c * e.i);
    } else if (var == Var::Y && e.j > 0) {
      out.add_term({e.i, e.j - 1}, c * e.j);
    }
  }
  return out;
}

Poly2 Poly2::swapped() const {
  Poly2 out;
  for (const auto& [e, c] : terms_) out.add_term({e.j, e.i}, c);
  return out;
}

int Poly2::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.degree());
  return d;
}

double Poly2::coefficient(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? 0.0 : it->second;
}

double Poly2::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

std::vector<Term> Poly2::term_list() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.push_back({e.i, e.j, c});
  return out;
}

Poly2& Poly2::operator+=(const Poly2& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Poly2& Poly2::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (it->second == 0.0) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      out.add_term({ea.i + eb.i, ea.j + eb.j}, ca * cb);
    }
  }
  return out;
}

}  // namespace singode
