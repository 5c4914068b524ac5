#include "singode/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "singode/error.hpp"

namespace singode {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

ExpectedDirection expect(double p, int mult, Verdict v) {
  return {Direction::from_slope(p), mult, v};
}

ExpectedDirection expect_inf(int mult, Verdict v) { return {Direction::infinite(), mult, v}; }

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> xs(n);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t k = 0; k < n; ++k) {
    xs[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  return xs;
}

}  // namespace

CorpusEntry make_example1(double a) {
  CorpusEntry e;
  e.id = "ex1";
  e.description = "2y p' = p^2; parabola branches y = a x^2 issue from the origin";
  e.ode.delta = Poly2{{0, 1, 2.0}};
  e.ode.m.mu[2] = Poly2::constant(1.0);
  e.parameters = {{"a", a}};
  e.closed_form = [a](double x) { return ClosedFormValue{a * x * x, 2.0 * a * x, 2.0 * a}; };
  e.expected = {ExpectedPoint{{0.0, 0.0},
                              false,
                              {expect(0.0, 2, Verdict::MultipleRoot),
                               expect_inf(1, Verdict::NegativeRationalResonant)},
                              std::nullopt,
                              OscillationVerdict::Excluded}};
  return e;
}

CorpusEntry make_example2(double alpha, double beta) {
  CorpusEntry e;
  e.id = "ex2";
  e.description = "x^4 p' = 2x^3 p - (2x^2+1) y; y = x^2 (a cos 1/x + b sin 1/x) oscillates";
  e.ode.delta = Poly2{{4, 0, 1.0}};
  e.ode.m.mu[0] = Poly2{{2, 1, -2.0}, {0, 1, -1.0}};
  e.ode.m.mu[1] = Poly2{{3, 0, 2.0}};
  e.parameters = {{"alpha", alpha}, {"beta", beta}};
  e.closed_form = [alpha, beta](double x) {
    const double u = 1.0 / x;
    const double a = alpha * std::cos(u) + beta * std::sin(u);
    const double b = alpha * std::sin(u) - beta * std::cos(u);
    return ClosedFormValue{x * x * a, 2.0 * x * a + b, 2.0 * a + 2.0 * b / x - a / (x * x)};
  };
  e.spacing = SampleSpacing::Reciprocal;
  e.closed_form_behavior = OscillationKind::Oscillating;
  e.expected = {ExpectedPoint{{0.0, 0.0}, true, {}, Verdict::DegenerateLocus,
                              OscillationVerdict::NotExcluded}};
  return e;
}

CorpusEntry make_example3(double alpha, double beta) {
  CorpusEntry e;
  e.id = "ex3";
  e.description = "x^2 p' = x p - 2y; y = x (a cos ln x + b sin ln x) oscillates";
  e.ode.delta = Poly2{{2, 0, 1.0}};
  e.ode.m.mu[0] = Poly2{{0, 1, -2.0}};
  e.ode.m.mu[1] = Poly2{{1, 0, 1.0}};
  e.parameters = {{"alpha", alpha}, {"beta", beta}};
  e.closed_form = [alpha, beta](double x) {
    const double l = std::log(x);
    const double c = std::cos(l), s = std::sin(l);
    const double p = (alpha + beta) * c + (beta - alpha) * s;
    const double dp = ((beta - alpha) * c - (alpha + beta) * s) / x;
    return ClosedFormValue{x * (alpha * c + beta * s), p, dp};
  };
  e.closed_form_behavior = OscillationKind::Oscillating;
  e.expected = {ExpectedPoint{{0.0, 0.0}, true, {}, Verdict::DegenerateLocus,
                              OscillationVerdict::NotExcluded}};
  return e;
}

CorpusEntry make_example4(double alpha, double c, std::string id) {
  if (alpha == 0.0) throw Error(ErrorKind::InvalidInput, "example 4 needs alpha != 0");
  CorpusEntry e;
  e.id = id.empty() ? "ex4" : std::move(id);
  e.description = "x p' = alpha p (p^2 - 1); p = 1/sqrt(1 + c|x|^(2 alpha))";
  e.ode.delta = Poly2{{1, 0, 1.0}};
  e.ode.m.mu[1] = Poly2::constant(-alpha);
  e.ode.m.mu[3] = Poly2::constant(alpha);
  e.parameters = {{"alpha", alpha}, {"c", c}};

  auto slope = [alpha, c](double x) {
    return 1.0 / std::sqrt(1.0 + c * std::pow(std::abs(x), 2.0 * alpha));
  };
  e.closed_form = [alpha, c, slope](double x) {
    const double w = 1.0 + c * std::pow(std::abs(x), 2.0 * alpha);
    const double p = 1.0 / std::sqrt(w);
    const double dp = -alpha * c * std::pow(std::abs(x), 2.0 * alpha - 1.0) * std::pow(w, -1.5) *
                      (x < 0.0 ? -1.0 : 1.0);
    const double y =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(slope, 0.0, x, 8, 1e-12);
    return ClosedFormValue{y, p, dp};
  };

  // lambda = -alpha at p = 0 and 2 alpha at p = +-1.
  auto verdict_for = [](double lambda) {
    if (lambda < 0.0) {
      const bool rational = rational_within(lambda, 64, 1e-9).has_value();
      return rational ? Verdict::NegativeRationalResonant : Verdict::Saddle;
    }
    const auto f = rational_within(lambda, 64, 1e-9);
    if (f && f->den == 1) return Verdict::NodePositiveResonant;
    if (f && f->num == 1) return Verdict::NodeReciprocalResonant;
    return Verdict::NodeNonResonant;
  };
  for (double y0 : {0.0, 5.0}) {
    e.expected.push_back(ExpectedPoint{{0.0, y0},
                                       false,
                                       {expect(-1.0, 1, verdict_for(2.0 * alpha)),
                                        expect(0.0, 1, verdict_for(-alpha)),
                                        expect(1.0, 1, verdict_for(2.0 * alpha))},
                                       std::nullopt,
                                       OscillationVerdict::Excluded});
  }

  // Seeds on exact family members: p(s) = 1/sqrt(1 + c s^(2 alpha)) at s = 1e-3.
  const double s = 1e-3;
  auto node_offsets = [&](double p_i) {
    std::vector<double> out;
    for (double cc : {0.5, 1.0, 2.0, 3.0, 5.0}) {
      out.push_back(p_i / std::sqrt(1.0 + cc * std::pow(s, 2.0 * alpha)) - p_i);
    }
    return out;
  };
  auto p0_offsets = [&]() {
    std::vector<double> out;
    for (double cc : {0.5, 1.0, 2.0, 3.0, 5.0}) {
      out.push_back(1.0 / std::sqrt(1.0 + cc * std::pow(s, 2.0 * alpha)));
    }
    return out;
  };

  const auto f2 = rational_within(2.0 * alpha, 64, 1e-9);
  if (alpha > 0.0) {
    if (f2 && f2->den == 1) {
      for (double p_i : {1.0, -1.0}) {
        e.traces.push_back(TraceCheck{"log_coefficient_p" + std::string(p_i > 0 ? "+1" : "-1"),
                                      {0.0, 0.0}, Direction::from_slope(p_i), Side::Plus,
                                      TraceCheckKind::LogCoefficient, node_offsets(p_i), 0.0, 0.02,
                                      false, static_cast<int>(f2->num)});
      }
    } else {
      e.traces.push_back(TraceCheck{"exponent_p+1", {0.0, 0.0}, Direction::from_slope(1.0),
                                    Side::Plus, TraceCheckKind::Exponent, node_offsets(1.0),
                                    2.0 * alpha, 0.01, true, 0});
    }
    if (verdict_for(-alpha) == Verdict::Saddle) {
      e.traces.push_back(TraceCheck{"saddle_unique_p0", {0.0, 0.0}, Direction::from_slope(0.0),
                                    Side::Plus, TraceCheckKind::SaddleUnique, {1e-3, -1e-3}, 0.0,
                                    1e-8, false, 0});
    }
  } else {
    e.traces.push_back(TraceCheck{"exponent_p0", {0.0, 0.0}, Direction::from_slope(0.0),
                                  Side::Plus, TraceCheckKind::Exponent, p0_offsets(), -alpha, 0.01,
                                  true, 0});
    e.traces.push_back(TraceCheck{"saddle_unique_p+1", {0.0, 0.0}, Direction::from_slope(1.0),
                                  Side::Plus, TraceCheckKind::SaddleUnique, {1e-3, -1e-3}, 0.0,
                                  1e-8, false, 0});
  }
  return e;
}

CorpusEntry make_example5(double alpha, std::vector<double> f, double c, std::string id) {
  if (alpha == 0.0) throw Error(ErrorKind::InvalidInput, "example 5 needs alpha != 0");
  CorpusEntry e;
  e.id = id.empty() ? "ex5" : std::move(id);
  e.description = "x p' = alpha p + f(x); integer alpha = n brings x^n (c + f_n ln x)";
  e.ode.delta = Poly2{{1, 0, 1.0}};
  e.ode.m.mu[1] = Poly2::constant(alpha);
  std::vector<Term> f_terms;
  for (std::size_t k = 0; k < f.size(); ++k) {
    f_terms.push_back({static_cast<int>(k + 1), 0, f[k]});
  }
  e.ode.m.mu[0] = Poly2(f_terms);
  e.parameters = {{"alpha", alpha}, {"c", c}};
  for (std::size_t k = 0; k < f.size(); ++k) {
    e.parameters.emplace_back("f" + std::to_string(k + 1), f[k]);
  }

  const double rounded = std::round(alpha);
  const bool integer = rounded >= 1.0 && std::abs(alpha - rounded) <= 1e-12;
  const int n = integer ? static_cast<int>(rounded) : 0;
  e.closed_form = [alpha, f, c, integer, n](double x) {
    ClosedFormValue v;
    const double lx = std::log(x);
    for (std::size_t k = 0; k < f.size(); ++k) {
      const int i = static_cast<int>(k + 1);
      if (integer && i == n) continue;
      const double g = f[k] / (i - alpha);
      v.y += g * std::pow(x, i + 1) / (i + 1);
      v.p += g * std::pow(x, i);
      v.dp += i * g * std::pow(x, i - 1);
    }
    if (integer) {
      const double fn = static_cast<std::size_t>(n) <= f.size() ? f[static_cast<std::size_t>(n) - 1] : 0.0;
      const double m = n + 1.0;
      v.y += c * std::pow(x, m) / m + fn * std::pow(x, m) * (lx / m - 1.0 / (m * m));
      v.p += std::pow(x, n) * (c + fn * lx);
      v.dp += n * std::pow(x, n - 1) * (c + fn * lx) + fn * std::pow(x, n - 1);
    } else {
      v.y += c * std::pow(x, alpha + 1.0) / (alpha + 1.0);
      v.p += c * std::pow(x, alpha);
      v.dp += c * alpha * std::pow(x, alpha - 1.0);
    }
    return v;
  };

  const Verdict at_zero = alpha < 0.0 ? Verdict::Saddle
                          : integer   ? Verdict::NodePositiveResonant
                                      : Verdict::NodeNonResonant;
  e.expected = {ExpectedPoint{{0.0, 0.0},
                              false,
                              {expect(0.0, 1, at_zero), expect_inf(2, Verdict::MultipleRoot)},
                              std::nullopt,
                              OscillationVerdict::Excluded}};

  if (integer) {
    const double fn = static_cast<std::size_t>(n) <= f.size() ? f[static_cast<std::size_t>(n) - 1] : 0.0;
    const double s = 1e-3;
    std::vector<double> offsets;
    // Family members differ only in c; shift the default member's slope at s.
    const double base = e.closed_form(s).p - std::pow(s, n) * c;
    for (double cc : {-1.0, 0.0, 1.0, 2.0}) offsets.push_back(base + std::pow(s, n) * cc);
    e.traces.push_back(TraceCheck{"log_coefficient_p0", {0.0, 0.0}, Direction::from_slope(0.0),
                                  Side::Plus, TraceCheckKind::LogCoefficient, offsets, fn, 0.02,
                                  true, n});
  }
  return e;
}

CorpusEntry make_geodesic_cy(double k) {
  CorpusEntry e;
  e.id = "geo_cy";
  e.description = "coefficient-form geodesic equation of dx^2 + y dy^2, y p' = -p^2; y = sqrt(2 k x)";
  Metric g{Poly2::constant(1.0), Poly2{}, Poly2::y()};
  e.ode = geodesic_from_metric(g);
  e.metric = g;
  e.parameters = {{"k", k}};
  e.closed_form = [k](double x) {
    const double y = std::sqrt(2.0 * k * x);
    return ClosedFormValue{y, k / y, -k * k / (y * y * y)};
  };
  e.expected = {ExpectedPoint{{0.0, 0.0},
                              false,
                              {expect(0.0, 2, Verdict::MultipleRoot),
                               expect_inf(1, Verdict::NodePositiveResonant)},
                              std::nullopt,
                              OscillationVerdict::Excluded}};
  return e;
}

std::vector<CorpusEntry> corpus_list() {
  std::vector<CorpusEntry> out;
  out.push_back(make_example1());
  out.push_back(make_example2());
  out.push_back(make_example3());
  out.push_back(make_example4(1.0, 5.0, "ex4"));
  out.push_back(make_example4(kSqrt2, 5.0, "ex4_sqrt2"));
  out.push_back(make_example4(-kSqrt2, 5.0, "ex4_neg_sqrt2"));
  out.push_back(make_example5());
  out.push_back(make_geodesic_cy());
  return out;
}

std::optional<CorpusEntry> corpus_find(const std::string& id) {
  for (CorpusEntry& e : corpus_list()) {
    if (e.id == id) return std::move(e);
  }
  return std::nullopt;
}

double residual_check(const CorpusEntry& entry, const std::vector<double>& xs) {
  double worst = 0.0;
  for (double x : xs) {
    const ClosedFormValue v = entry.closed_form(x);
    const PlanePoint q{x, v.y};
    const double r = std::abs(entry.ode.delta.eval(q) * v.dp - entry.ode.m.eval(q, v.p));
    worst = std::max(worst, r);
  }
  return worst;
}

Trajectory sample_closed_form(const CorpusEntry& entry, double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi > lo) || n < 2) {
    throw Error(ErrorKind::InvalidInput, "closed-form sampling needs 0 < lo < hi and n >= 2");
  }
  Trajectory traj;
  traj.meta.ode_id = entry.id;
  traj.meta.reversed = true;
  traj.samples.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(n - 1);
    double x = 0.0;
    if (entry.spacing == SampleSpacing::Reciprocal) {
      x = 1.0 / (1.0 / hi + f * (1.0 / lo - 1.0 / hi));
    } else {
      x = std::exp(std::log(hi) + f * (std::log(lo) - std::log(hi)));
    }
    const ClosedFormValue v = entry.closed_form(x);
    traj.samples.push_back({static_cast<double>(k), entry.issue_point.x + x,
                            entry.issue_point.y + v.y, v.p});
  }
  if (!traj.samples.empty()) {
    const Sample& s0 = traj.samples.front();
    traj.meta.start = {s0.x, s0.y, s0.p};
  }
  return traj;
}

namespace {

std::string at(PlanePoint q) {
  std::ostringstream os;
  os << "@(" << q.x << "," << q.y << ")";
  return os.str();
}

double direction_mismatches(const SingularOde& ode, const ExpectedPoint& ep,
                            const AnalysisOptions& opts) {
  double bad = 0.0;
  const AdmissibleSet set = admissible_directions(ode, ep.q, opts);
  if (set.all_directions_degenerate != ep.all_directions_degenerate) bad += 1.0;
  if (ep.degenerate_verdict) {
    if (classify(ode, ep.q, Direction::from_slope(0.0), opts).verdict != *ep.degenerate_verdict) {
      bad += 1.0;
    }
  }
  if (set.directions.size() != ep.directions.size()) return bad + 1.0;
  for (std::size_t k = 0; k < ep.directions.size(); ++k) {
    const auto& got = set.directions[k];
    const auto& want = ep.directions[k];
    const bool same_dir = got.dir.is_infinite() == want.dir.is_infinite() &&
                          (got.dir.is_infinite() ||
                           std::abs(got.dir.slope() - want.dir.slope()) <= 1e-9);
    if (!same_dir || got.multiplicity != want.multiplicity) bad += 1.0;
    if (classify(ode, ep.q, want.dir, opts).verdict != want.verdict) bad += 1.0;
  }
  return bad;
}

double sup_deviation_from_line(const std::vector<Trajectory>& trajs, PlanePoint q, double slope,
                               double radius) {
  double worst = 0.0;
  for (const Trajectory& t : trajs) {
    for (const Sample& s : t.samples) {
      if (std::abs(s.x - q.x) > radius) continue;
      worst = std::max(worst, std::abs(s.y - q.y - slope * (s.x - q.x)));
    }
  }
  return worst;
}

}  // namespace

std::vector<CheckResult> verify_entry(const CorpusEntry& entry, const AnalysisOptions& opts) {
  std::vector<CheckResult> out;
  auto add = [&](std::string check, double measured, double threshold, bool passed) {
    out.push_back({entry.id, std::move(check), measured, threshold, passed});
  };

  const double res = residual_check(entry, log_grid(entry.domain_lo, entry.domain_hi, 400));
  add("closed_form_residual", res, 1e-10, res < 1e-10);

  for (const ExpectedPoint& ep : entry.expected) {
    const double bad = direction_mismatches(entry.ode, ep, opts);
    add("classification" + at(ep.q), bad, 0.0, bad == 0.0);
    const bool osc_ok = oscillation_excluded(entry.ode, ep.q, opts) == ep.oscillation;
    add("oscillation_excluded" + at(ep.q), osc_ok ? 0.0 : 1.0, 0.0, osc_ok);
    if (entry.metric) {
      const bool fails = geodesic_oscillation_necessary(*entry.metric, ep.q, opts) ==
                         GeodesicCondition::ConditionFails;
      const auto grad = delta_gradient(entry.ode, ep.q);
      add("geodesic_gradient_nonzero" + at(ep.q), std::hypot(grad[0], grad[1]),
          opts.tol_gradient, fails);
    }
  }

  {
    const bool infinite_limit = entry.closed_form(1e-6).p > 1e2;
    const double lo = infinite_limit ? 1e-6 : 1e-4;
    const std::size_t n = entry.spacing == SampleSpacing::Reciprocal ? 200000 : 4000;
    const OscillationReport rep = oscillation_detect(sample_closed_form(entry, lo, 1.0, n),
                                                     entry.issue_point);
    const bool ok = rep.verdict == entry.closed_form_behavior;
    add("closed_form_" + std::string(to_string(entry.closed_form_behavior)), ok ? 0.0 : 1.0, 0.0,
        ok);
  }

  TraceOptions topts;
  topts.analysis = opts;
  for (const TraceCheck& tc : entry.traces) {
    try {
      const auto trajs = trace_from_singular(entry.ode, tc.q, tc.dir, tc.side, tc.offsets, topts);
      double measured = 0.0;
      switch (tc.kind) {
        case TraceCheckKind::Exponent:
          measured = estimate_exponent(trajs, tc.q, tc.dir).exponent_hat;
          break;
        case TraceCheckKind::LogCoefficient:
          measured = detect_log_term(trajs, tc.q, tc.dir, tc.n).log_coefficient_hat;
          break;
        case TraceCheckKind::SaddleUnique:
          measured = sup_deviation_from_line(trajs, tc.q, tc.dir.slope(), 0.5);
          break;
      }
      const double err = tc.kind == TraceCheckKind::SaddleUnique ? measured
                         : tc.relative ? std::abs(measured - tc.expected) / std::abs(tc.expected)
                                       : std::abs(measured - tc.expected);
      add(tc.name, measured, tc.tolerance, err < tc.tolerance);
    } catch (const Error& err) {
      add(tc.name + ":" + std::string(to_string(err.kind())), NAN, tc.tolerance, false);
    }
  }
  return out;
}

}  // namespace singode
