#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "singode/error.hpp"
#include "singode/io.hpp"
#include "singode/model.hpp"
#include "support.hpp"

using namespace singode;

TEST_CASE("poly eval and canonical form") {
  const Poly2 f{{2, 1, 1.0}, {0, 0, 3.0}};
  CHECK(f.eval(2.0, 5.0) == doctest::Approx(23.0));
  CHECK(Poly2{{2, 0, 2.0}, {0, 0, 1.0}}.eval(0.0, 0.0) == 1.0);
  CHECK((Poly2::x() - Poly2::x()).is_zero());
  CHECK(Poly2{{1, 0, 0.0}}.size() == 0);
  CHECK(f.degree() == 3);
  CHECK(Poly2{}.degree() < 0);
  CHECK(f.coefficient(2, 1) == 1.0);
  CHECK(f.coefficient(5, 5) == 0.0);
}

TEST_CASE("poly arithmetic") {
  const Poly2 x = Poly2::x(), y = Poly2::y();
  CHECK((x + y) * (x - y) == Poly2{{2, 0, 1.0}, {0, 2, -1.0}});
  CHECK(Poly2{{3, 2, 1.0}}.dx() == Poly2{{2, 2, 3.0}});
  CHECK(Poly2{{3, 2, 1.0}}.dy() == Poly2{{3, 1, 2.0}});
  CHECK(Poly2::constant(4.0).dx().is_zero());
  CHECK(Poly2{{3, 1, 2.0}}.swapped() == Poly2{{1, 3, 2.0}});
}

TEST_CASE("poly rejects bad terms") {
  CHECK_THROWS_AS(Poly2({{-1, 0, 1.0}}), Error);
  CHECK_THROWS_AS(Poly2({{0, 0, std::nan("")}}), Error);
}

TEST_CASE("poly derivatives match central differences") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Poly2 f = testsupport::random_poly(rng, 5);
    const PlanePoint q{u(rng), u(rng)};
    auto g = [&](PlanePoint r) { return f.eval(r); };
    CHECK(std::abs(f.dx().eval(q) - testsupport::central(g, q, 0, 1e-5)) < 1e-8);
    CHECK(std::abs(f.dy().eval(q) - testsupport::central(g, q, 1, 1e-5)) < 1e-8);
  }
}

TEST_CASE("cubic field") {
  CubicField m;
  m.mu[1] = Poly2::constant(-1.0);
  m.mu[3] = Poly2::constant(1.0);
  for (double p : {-1.0, 0.0, 1.0}) CHECK(m.eval({0.3, -2.0}, p) == 0.0);
  CHECK(m.dp({0.0, 0.0}, 1.0) == doctest::Approx(2.0));
  CHECK(CubicField{}.eval({1.0, 2.0}, 3.0) == 0.0);
  const CubicField r = reciprocal_cubic(m);
  CHECK(r.mu[0] == m.mu[3]);
  CHECK(r.mu[2] == m.mu[1]);
  CHECK(reciprocal_cubic(r) == m);
}

TEST_CASE("directions") {
  CHECK(Direction::infinite().is_infinite());
  CHECK(Direction::from_pair(0.0, -2.0) == Direction::infinite());
  CHECK(Direction::from_pair(2.0, 1.0).slope() == doctest::Approx(0.5));
  CHECK(Direction::from_slope(-1.5).slope() == -1.5);
  CHECK(Direction::infinite().to_string() == "inf");
}

TEST_CASE("geodesic coefficients of simple metrics") {
  const Poly2 one = Poly2::constant(1.0);
  SingularOde e = geodesic_from_metric({one, Poly2{}, one});
  CHECK(e.delta == one);
  for (const Poly2& mu : e.m.mu) CHECK(mu.is_zero());

  e = geodesic_from_metric({one, Poly2{}, -1.0 * one});
  CHECK(e.delta == Poly2::constant(-1.0));
  for (const Poly2& mu : e.m.mu) CHECK(mu.is_zero());

  e = geodesic_from_metric({one, Poly2{}, Poly2::y()});
  CHECK(e.delta == Poly2::y());
  CHECK(e.m.mu[0].is_zero());
  CHECK(e.m.mu[1].is_zero());
  CHECK(e.m.mu[2] == Poly2::constant(-1.0));
  CHECK(e.m.mu[3].is_zero());
}

// Oracle: the Levi-Civita connection from Christoffel symbols evaluated with
// finite-difference partials. With Delta = ac - b^2 the coefficient form is
// 2 Delta y'' = M, so M must equal 2 Delta times the Christoffel combination.
TEST_CASE("geodesic coefficients agree with Christoffel symbols") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Metric g{testsupport::random_poly(rng, 2), testsupport::random_poly(rng, 2),
                   testsupport::random_poly(rng, 2)};
    const PlanePoint q{u(rng), u(rng)};
    const double h = 1e-6;
    auto d = [&](const Poly2& f, int k) {
      return testsupport::central([&](PlanePoint r) { return f.eval(r); }, q, k, h);
    };
    const double a = g.a.eval(q), b = g.b.eval(q), c = g.c.eval(q);
    const double det = a * c - b * b;
    if (std::abs(det) < 0.1) continue;
    double inv[2][2] = {{c / det, -b / det}, {-b / det, a / det}};
    const Poly2* comp[2][2] = {{&g.a, &g.b}, {&g.b, &g.c}};
    double dg[2][2][2];  // dg[l][i][j] = d_l g_ij
    for (int l = 0; l < 2; ++l)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) dg[l][i][j] = d(*comp[i][j], l);
    double G[2][2][2] = {};
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int l = 0; l < 2; ++l)
            G[k][i][j] += 0.5 * inv[k][l] * (dg[i][l][j] + dg[j][l][i] - dg[l][i][j]);
    // y'' = -G2_11 + (G1_11 - 2 G2_12) p + (2 G1_12 - G2_22) p^2 + G1_22 p^3
    const double oracle[4] = {-G[1][0][0], G[0][0][0] - 2.0 * G[1][0][1],
                              2.0 * G[0][0][1] - G[1][1][1], G[0][1][1]};
    const SingularOde e = geodesic_from_metric(g);
    CHECK(e.delta.eval(q) == doctest::Approx(det).epsilon(1e-12));
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(e.m.mu[i].eval(q) - 2.0 * det * oracle[i]) < 1e-6);
    }
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("geodesic delta derivatives are consistent") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Metric g{testsupport::random_poly(rng, 3), testsupport::random_poly(rng, 3),
                   testsupport::random_poly(rng, 3)};
    const Poly2 delta = geodesic_from_metric(g).delta;
    const Poly2 direct = g.a * g.c - g.b * g.b;
    CHECK((delta - direct).max_abs_coefficient() < 1e-13);
    const Poly2 product_rule = g.a.dx() * g.c + g.a * g.c.dx() - 2.0 * (g.b * g.b.dx());
    CHECK((delta.dx() - product_rule).max_abs_coefficient() < 1e-13);
  }
}

TEST_CASE("axis swap") {
  SingularOde ode;  // 2y p' = p^2
  ode.delta = Poly2{{0, 1, 2.0}};
  ode.m.mu[2] = Poly2::constant(1.0);
  const SingularOde s = swap_axes(ode);
  CHECK(s.delta == Poly2{{1, 0, 2.0}});
  CHECK(s.m.mu[1] == Poly2::constant(-1.0));
  CHECK(s.m.mu[0].is_zero());
  CHECK(s.m.mu[2].is_zero());
  CHECK(swap_axes(s) == ode);
}

TEST_CASE("equation files") {
  const auto in = parse_equation_text(R"({"delta": [[1,0,1]], "mu": [[], [[0,0,-1]], [], [[0,0,1]]]})");
  CHECK(in.ode.delta == Poly2::x());
  CHECK(!in.metric);
  const auto back = parse_equation(equation_to_json(in.ode));
  CHECK(back.ode == in.ode);

  const auto geo = parse_equation_text(R"({"metric": {"a": [[0,0,1]], "b": [], "c": [[0,1,1]]}})");
  CHECK(geo.metric.has_value());
  CHECK(geo.ode.m.mu[2] == Poly2::constant(-1.0));

  for (const char* bad : {"{", "[]", R"({"delta": []})", R"({"delta": [], "mu": [[],[],[]]})",
                          R"({"delta": [[1.5,0,1]], "mu": [[],[],[],[]]})",
                          R"({"delta": [[-1,0,1]], "mu": [[],[],[],[]]})",
                          R"({"metric": {"a": []}})"}) {
    CHECK_THROWS_WITH_AS(parse_equation_text(bad), doctest::Contains("ParseError"), Error);
  }
}
