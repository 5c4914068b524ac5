#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "singode/corpus.hpp"

using namespace singode;

namespace {

std::vector<double> log_points(double lo, double hi, int n) {
  std::vector<double> xs;
  for (int k = 0; k < n; ++k) xs.push_back(lo * std::pow(hi / lo, k / double(n - 1)));
  return xs;
}

}  // namespace

TEST_CASE("corpus listing") {
  const auto all = corpus_list();
  CHECK(all.size() >= 6);
  std::set<std::string> ids;
  for (const auto& e : all) ids.insert(e.id);
  CHECK(ids.size() == all.size());
  CHECK(corpus_find("ex4").has_value());
  CHECK(!corpus_find("nope").has_value());
}

TEST_CASE("example 4 directions") {
  const CorpusEntry e = make_example4(1.0);
  const AdmissibleSet s = admissible_directions(e.ode, {0.0, 0.0});
  REQUIRE(s.directions.size() == 3);
  CHECK(s.directions[0].dir.slope() == -1.0);
  CHECK(s.directions[1].dir.slope() == 0.0);
  CHECK(s.directions[2].dir.slope() == 1.0);
}

TEST_CASE("example 5 closed form") {
  const CorpusEntry e = make_example5(2.0, {0.0, 1.0}, 0.0);
  for (double x : {1e-3, 0.1, 0.5, 1.0}) {
    const ClosedFormValue v = e.closed_form(x);
    CHECK(v.p == doctest::Approx(x * x * std::log(x)).epsilon(1e-12));
  }
}

TEST_CASE("closed-form residuals vanish") {
  CHECK(residual_check(make_example2(1.0, 2.0), log_points(0.01, 1.0, 200)) < 1e-10);
  CHECK(residual_check(make_example3(1.0, 1.0), log_points(1e-3, 1.0, 400)) < 1e-10);
  for (double a : {1.0, std::sqrt(2.0), -std::sqrt(2.0)}) {
    CHECK(residual_check(make_example4(a), log_points(1e-3, 1.0, 400)) < 1e-10);
  }
  CHECK(residual_check(make_example5(), log_points(1e-3, 1.0, 400)) < 1e-10);
  CHECK(residual_check(make_geodesic_cy(), log_points(1e-3, 1.0, 400)) < 1e-10);
}

TEST_CASE("closed-form sampling") {
  const Trajectory t = sample_closed_form(make_example4(1.0), 1e-3, 1.0, 50);
  REQUIRE(t.samples.size() == 50);
  CHECK(t.meta.reversed);
  CHECK(t.samples.front().x == doctest::Approx(1.0));
  CHECK(t.samples.back().x == doctest::Approx(1e-3));
}

TEST_CASE("every corpus entry verifies") {
  for (const CorpusEntry& e : corpus_list()) {
    CAPTURE(e.id);
    const auto results = verify_entry(e);
    CHECK(!results.empty());
    for (const CheckResult& r : results) {
      CAPTURE(r.check);
      CAPTURE(r.measured);
      CHECK(r.passed);
    }
  }
}
