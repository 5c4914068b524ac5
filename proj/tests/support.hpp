#pragma once

#include <array>
#include <cmath>
#include <random>

#include "singode/model.hpp"

namespace testsupport {

inline singode::Poly2 random_poly(std::mt19937_64& rng, int max_degree, double scale = 1.0) {
  std::uniform_real_distribution<double> coef(-scale, scale);
  std::vector<singode::Term> terms;
  for (int d = 0; d <= max_degree; ++d)
    for (int i = 0; i <= d; ++i) terms.push_back({i, d - i, coef(rng)});
  return singode::Poly2(terms);
}

inline singode::SingularOde random_ode(std::mt19937_64& rng, int max_degree = 3) {
  singode::SingularOde ode;
  ode.delta = random_poly(rng, max_degree);
  for (auto& m : ode.m.mu) m = random_poly(rng, max_degree);
  return ode;
}

// Central difference of g along coordinate k.
template <class F, class P>
double central(F g, P q, int k, double h) {
  P a = q, b = q;
  if (k == 0) { a.x -= h; b.x += h; }
  else { a.y -= h; b.y += h; }
  return (g(b) - g(a)) / (2.0 * h);
}

}  // namespace testsupport
