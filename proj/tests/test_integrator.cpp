#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "singode/corpus.hpp"
#include "singode/error.hpp"
#include "singode/integrator.hpp"
#include "support.hpp"

using namespace singode;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// p at x by linear interpolation along an x-monotone trajectory.
double p_at(const Trajectory& t, double x) {
  for (std::size_t i = 1; i < t.samples.size(); ++i) {
    const Sample& a = t.samples[i - 1];
    const Sample& b = t.samples[i];
    if ((a.x - x) * (b.x - x) <= 0.0 && a.x != b.x) {
      return a.p + (b.p - a.p) * (x - a.x) / (b.x - a.x);
    }
  }
  return NAN;
}

Trajectory synthetic(double x0, double p_i, double (*dev)(double)) {
  Trajectory t;
  t.meta.side = Side::Plus;
  for (int k = 0; k <= 200; ++k) {
    const double r = std::pow(10.0, -0.5 - 2.0 * k / 200.0);  // 10^-0.5 .. 10^-2.5
    t.samples.push_back({static_cast<double>(k), x0 + r, 0.0, p_i + dev(r)});
  }
  return t;
}

}  // namespace

TEST_CASE("equilibrium line p = 1 stays exact") {
  const SingularOde ode = make_example4(1.0).ode;
  IntegratorOptions o;
  o.box = Box{-10.0, 10.0, -10.0, 10.0};
  const Trajectory t = integrate(ode, {0.5, 0.5, 1.0}, TimeDirection::Forward, o);
  CHECK(t.meta.reason == Termination::LeftBox);
  CHECK(t.samples.size() > 2);
  for (const Sample& s : t.samples) {
    CHECK(std::abs(s.y - s.x) < 1e-9);
    CHECK(std::abs(s.p - 1.0) < 1e-9);
  }
}

TEST_CASE("zero field is stationary") {
  const Trajectory t = integrate(SingularOde{}, {0.1, 0.2, 0.3}, TimeDirection::Forward);
  CHECK(t.samples.size() == 1);
  CHECK(t.meta.reason == Termination::Stalled);
}

TEST_CASE("backward integration reproduces a log-periodic closed form") {
  const CorpusEntry e = make_example3(1.0, 1.0);
  const ClosedFormValue v = e.closed_form(1.0);
  IntegratorOptions o;
  o.box = Box{5e-4, 2.0, -10.0, 10.0};
  const Trajectory t = integrate(e.ode, {1.0, v.y, v.p}, TimeDirection::Backward, o);
  CHECK(t.meta.reason == Termination::LeftBox);
  int checked = 0;
  double worst = 0.0;
  for (const Sample& s : t.samples) {
    if (s.x < 1e-3) continue;
    const ClosedFormValue c = e.closed_form(s.x);
    const double err = std::hypot(s.y - c.y, s.p - c.p) / std::hypot(c.y, c.p);
    worst = std::max(worst, err);
    ++checked;
  }
  CHECK(checked > 100);
  CHECK(worst < 1e-6);
}

TEST_CASE("halving tolerances changes the endpoint by less than the coarse tolerance") {
  const SingularOde ode = make_example4(kSqrt2).ode;
  IntegratorOptions coarse;
  coarse.abs_tol = coarse.rel_tol = 1e-8;
  coarse.t_max = 1.0;
  IntegratorOptions fine = coarse;
  fine.abs_tol = fine.rel_tol = 5e-9;
  const JetPoint start{0.5, 0.2, 0.5};
  const Sample a = integrate(ode, start, TimeDirection::Forward, coarse).samples.back();
  const Sample b = integrate(ode, start, TimeDirection::Forward, fine).samples.back();
  CHECK(a.t == doctest::Approx(1.0));
  CHECK(b.t == doctest::Approx(1.0));
  const double scale = 1.0 + std::max({std::abs(a.x), std::abs(a.y), std::abs(a.p)});
  CHECK(std::abs(a.x - b.x) < 1e-8 * scale);
  CHECK(std::abs(a.y - b.y) < 1e-8 * scale);
  CHECK(std::abs(a.p - b.p) < 1e-8 * scale);
}

TEST_CASE("step size underflow carries the partial trajectory") {
  IntegratorOptions o;
  o.abs_tol = o.rel_tol = 1e-300;
  try {
    integrate(make_example4(1.0).ode, {0.5, 0.0, 0.3}, TimeDirection::Forward, o);
    FAIL("expected StepSizeUnderflow");
  } catch (const StepSizeUnderflow& e) {
    CHECK(e.kind() == ErrorKind::StepSizeUnderflow);
    CHECK(e.partial().samples.size() == 1);
  }
}

TEST_CASE("tracing preconditions") {
  const SingularOde ex4 = make_example4(kSqrt2).ode;
  CHECK(trace_from_singular(ex4, {0.0, 0.0}, Direction::from_slope(0.0), Side::Plus, {}).empty());
  const double zero[] = {0.0};
  CHECK_THROWS_WITH_AS(trace_from_singular(ex4, {0.0, 0.0}, Direction::from_slope(0.0), Side::Plus, zero),
                       doctest::Contains("SeedRejected"), Error);
  const double one[] = {1e-3};
  CHECK_THROWS_AS(trace_from_singular(make_example2().ode, {0.0, 0.0}, Direction::from_slope(0.0),
                                      Side::Plus, one),
                  Error);
}

TEST_CASE("traced family matches the closed form") {
  const SingularOde ode = make_example4(1.0).ode;
  const double s = 1e-3;
  for (double c : {0.5, 1.0, 5.0}) {
    const double offset[] = {1.0 / std::sqrt(1.0 + c * s * s) - 1.0};
    const auto trajs = trace_from_singular(ode, {0.0, 0.0}, Direction::from_slope(1.0), Side::Plus, offset);
    REQUIRE(trajs.size() == 1);
    int checked = 0;
    for (const Sample& v : trajs[0].samples) {
      if (v.x < 1e-2 || v.x > 1.0) continue;
      const double want = 1.0 / std::sqrt(1.0 + c * v.x * v.x);
      CHECK(std::abs(v.p - want) / want < 1e-4);
      ++checked;
    }
    CHECK(checked > 20);
  }
}

TEST_CASE("saddle: both offsets give the same single solution") {
  const SingularOde ode = make_example4(kSqrt2).ode;
  const double offsets[] = {1e-3, -1e-3};
  const auto trajs = trace_from_singular(ode, {0.0, 0.0}, Direction::from_slope(0.0), Side::Plus, offsets);
  REQUIRE(trajs.size() == 2);
  CHECK(trajs[0].meta.side == Side::Plus);
  CHECK(trajs[1].meta.side == Side::Minus);
  for (const Trajectory& t : trajs) {
    CHECK(t.samples.size() > 10);
    for (const Sample& v : t.samples) {
      if (std::abs(v.x) <= 0.5) CHECK(std::abs(v.y) < 1e-8);
    }
  }
}

TEST_CASE("node: distinct offsets give distinct solutions on both sides") {
  const SingularOde ode = make_example4(kSqrt2).ode;
  const double s = 1e-3;
  std::vector<double> offsets;
  for (double c : {0.5, 1.0, 2.0, 3.0, 5.0}) {
    offsets.push_back(1.0 / std::sqrt(1.0 + c * std::pow(s, 2 * kSqrt2)) - 1.0);
  }
  for (Side side : {Side::Plus, Side::Minus}) {
    const auto trajs = trace_from_singular(ode, {0.0, 0.0}, Direction::from_slope(1.0), side, offsets);
    REQUIRE(trajs.size() == 5);
    const double x = side == Side::Plus ? 0.1 : -0.1;
    for (std::size_t a = 0; a < trajs.size(); ++a) {
      CHECK(trajs[a].meta.side == side);
      for (std::size_t b = a + 1; b < trajs.size(); ++b) {
        CHECK(std::abs(p_at(trajs[a], x) - p_at(trajs[b], x)) > 1e-5);
      }
    }
    const FamilyEstimate e = estimate_exponent(trajs, {0.0, 0.0}, Direction::from_slope(1.0));
    CHECK(std::abs(e.exponent_hat - 2 * kSqrt2) < 0.01 * 2 * kSqrt2);
    CHECK(e.fit_residual >= 0.0);
  }
}

TEST_CASE("exponent of the resonant node family") {
  const SingularOde ode = make_example4(1.0).ode;
  std::vector<double> offsets;
  for (double c : {0.5, 1.0, 2.0}) offsets.push_back(1.0 / std::sqrt(1.0 + c * 1e-6) - 1.0);
  const auto trajs = trace_from_singular(ode, {0.0, 0.0}, Direction::from_slope(1.0), Side::Plus, offsets);
  const FamilyEstimate e = estimate_exponent(trajs, {0.0, 0.0}, Direction::from_slope(1.0));
  CHECK(std::abs(e.exponent_hat - 2.0) < 0.02);
}

TEST_CASE("fits on synthetic families") {
  std::vector<Trajectory> power{
      synthetic(0.0, 1.0, [](double r) { return std::pow(r, std::numbers::pi); }),
      synthetic(0.0, 1.0, [](double r) { return 2.0 * std::pow(r, std::numbers::pi); })};
  const FamilyEstimate e = estimate_exponent(power, {0.0, 0.0}, Direction::from_slope(1.0));
  CHECK(std::abs(e.exponent_hat - std::numbers::pi) < 1e-6);
  CHECK(e.trajectories_used == 2);

  std::vector<Trajectory> logs{synthetic(0.0, 0.0, [](double r) { return r * r * std::log(r); }),
                               synthetic(0.0, 0.0, [](double r) { return r * r * std::log(r); })};
  const FamilyEstimate l = detect_log_term(logs, {0.0, 0.0}, Direction::from_slope(0.0), 2);
  CHECK(std::abs(l.log_coefficient_hat - 1.0) < 1e-6);
  CHECK(std::abs(l.intercept_hat) < 1e-6);

  CHECK_THROWS_WITH_AS(estimate_exponent(std::span(power).first(1), {0.0, 0.0}, Direction::from_slope(1.0)),
                       doctest::Contains("InsufficientSamples"), Error);
  CHECK_THROWS_AS(estimate_exponent(std::span<const Trajectory>{}, {0.0, 0.0}, Direction::from_slope(1.0)),
                  Error);
}

TEST_CASE("oscillation detector on closed forms") {
  OscillationReport r = oscillation_detect(
      sample_closed_form(make_example3(1.0, 1.0), 1e-4, 1.0, 4000), {0.0, 0.0});
  CHECK(r.verdict == OscillationKind::Oscillating);

  r = oscillation_detect(sample_closed_form(make_example2(1.0, 0.0), 1e-4, 1.0, 200000), {0.0, 0.0});
  CHECK(r.verdict == OscillationKind::Oscillating);
  CHECK(!r.p_limit_hat);

  r = oscillation_detect(sample_closed_form(make_example1(1.0), 1e-4, 1.0, 4000), {0.0, 0.0});
  CHECK(r.verdict == OscillationKind::Proper);
  REQUIRE(r.p_limit_hat);
  CHECK(std::abs(*r.p_limit_hat) < 1e-3);

  OscillationOptions bad;
  bad.gamma = 1.0;
  CHECK_THROWS_AS(oscillation_detect(Trajectory{}, {0.0, 0.0}, bad), Error);
  CHECK(oscillation_detect(Trajectory{}, {0.0, 0.0}).verdict == OscillationKind::Inconclusive);
}

// Where the cubic does not vanish identically no traced solution may oscillate.
TEST_CASE("traced solutions never oscillate where oscillation is excluded") {
  std::mt19937_64 rng(53);
  int traced = 0;
  for (int trial = 0; trial < 60; ++trial) {
    SingularOde ode = testsupport::random_ode(rng, 2);
    ode.delta -= Poly2::constant(ode.delta.eval(0.0, 0.0));
    if (locus_regularity(ode, {0.0, 0.0}) != LocusRegularity::Regular) continue;
    if (oscillation_excluded(ode, {0.0, 0.0}) != OscillationVerdict::Excluded) continue;
    for (const auto& d : admissible_directions(ode, {0.0, 0.0}).directions) {
      const Classification c = classify(ode, {0.0, 0.0}, d.dir);
      if (!is_traceable(c.verdict)) continue;
      const double offsets[] = {1e-3, -1e-3};
      TraceOptions opts;
      opts.extent = 0.5;
      opts.integrator.max_steps = 20000;
      std::vector<Trajectory> trajs;
      try {
        trajs = trace_from_singular(ode, {0.0, 0.0}, d.dir, Side::Plus, offsets, opts);
      } catch (const Error&) {
        continue;
      }
      for (const Trajectory& t : trajs) {
        CHECK(oscillation_detect(t, {0.0, 0.0}).verdict != OscillationKind::Oscillating);
        ++traced;
      }
    }
  }
  CHECK(traced > 20);
}
