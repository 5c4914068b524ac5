#include "singode/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "singode/cubic.hpp"
#include "singode/error.hpp"

namespace singode {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::NotSingular: return "NotSingular";
    case Verdict::DegenerateLocus: return "DegenerateLocus";
    case Verdict::NotAdmissible: return "NotAdmissible";
    case Verdict::NonTransversal: return "NonTransversal";
    case Verdict::MultipleRoot: return "MultipleRoot";
    case Verdict::Saddle: return "Saddle";
    case Verdict::NodeNonResonant: return "NodeNonResonant";
    case Verdict::NodePositiveResonant: return "NodePositiveResonant";
    case Verdict::NodeReciprocalResonant: return "NodeReciprocalResonant";
    case Verdict::NegativeRationalResonant: return "NegativeRationalResonant";
  }
  return "Unknown";
}

bool is_node(Verdict v) {
  return v == Verdict::NodeNonResonant || v == Verdict::NodePositiveResonant ||
         v == Verdict::NodeReciprocalResonant;
}

bool is_traceable(Verdict v) {
  return v == Verdict::Saddle || v == Verdict::NegativeRationalResonant || is_node(v);
}

std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::UniqueSmooth: return "unique_smooth";
    case FamilyKind::Power: return "power";
    case FamilyKind::PowerLog: return "power_log";
  }
  return "unknown";
}

std::string_view to_string(OscillationVerdict v) {
  return v == OscillationVerdict::Excluded ? "excluded" : "not_excluded";
}

std::string_view to_string(GeodesicCondition v) {
  return v == GeodesicCondition::ConditionHolds ? "condition_holds" : "condition_fails";
}

std::string_view to_string(RationalityKind k) {
  switch (k) {
    case RationalityKind::Integer: return "integer";
    case RationalityKind::ReciprocalInteger: return "reciprocal_integer";
    case RationalityKind::Rational: return "rational";
    case RationalityKind::Irrational: return "irrational_within_tolerance";
  }
  return "unknown";
}

int AdmissibleSet::total_multiplicity() const {
  int total = 0;
  for (const auto& d : directions) total += d.multiplicity;
  return total;
}

std::array<double, 2> delta_gradient(const SingularOde& ode, PlanePoint q) {
  return {ode.delta.dx().eval(q), ode.delta.dy().eval(q)};
}

bool on_singular_locus(const SingularOde& ode, PlanePoint q, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidInput, "locus tolerance must be positive");
  return std::abs(ode.delta.eval(q)) <= tol;
}

namespace {

void require_on_locus(const SingularOde& ode, PlanePoint q, double tol) {
  if (!on_singular_locus(ode, q, tol)) {
    throw Error(ErrorKind::NotOnLocus, "|Delta(q)| exceeds the locus tolerance");
  }
}

bool all_mu_vanish(const std::array<double, 4>& c, double tol) {
  return std::all_of(c.begin(), c.end(), [tol](double v) { return std::abs(v) <= tol; });
}

}  // namespace

LocusRegularity locus_regularity(const SingularOde& ode, PlanePoint q,
                                 const AnalysisOptions& opts) {
  require_on_locus(ode, q, opts.tol_locus);
  const auto g = delta_gradient(ode, q);
  return std::hypot(g[0], g[1]) > opts.tol_gradient ? LocusRegularity::Regular
                                                     : LocusRegularity::Degenerate;
}

AdmissibleSet admissible_directions(const SingularOde& ode, PlanePoint q,
                                    const AnalysisOptions& opts) {
  AdmissibleSet out;
  const auto c = ode.m.coefficients_at(q);
  if (all_mu_vanish(c, opts.tol_mu)) {
    out.all_directions_degenerate = true;
    return out;
  }
  for (const RealRoot& r : real_roots(c, opts.tol_mu, opts.tol_root)) {
    out.directions.push_back({Direction::from_slope(r.value), r.multiplicity});
  }
  // p = infinity has the multiplicity of p = 0 in the reciprocal polynomial,
  // i.e. the number of vanishing leading coefficients.
  int inf_mult = 0;
  for (int k = 3; k >= 0 && std::abs(c[k]) <= opts.tol_mu; --k) ++inf_mult;
  if (inf_mult > 0) out.directions.push_back({Direction::infinite(), inf_mult});
  return out;
}

EigenData eigen_data(const SingularOde& ode, PlanePoint q, Direction dir,
                     const AnalysisOptions& opts) {
  if (dir.is_infinite()) {
    throw Error(ErrorKind::InvalidInput, "eigen_data needs a finite slope; swap axes for p = inf");
  }
  const double p = dir.slope();
  const auto g = delta_gradient(ode, q);
  EigenData e;
  e.lambda1 = g[0] + p * g[1];
  e.lambda2 = ode.m.dp(q, p);
  if (std::abs(e.lambda1) <= opts.tol_eigen) {
    throw Error(ErrorKind::NonTransversal, "lambda1 = Delta_x + p Delta_y vanishes");
  }
  if (std::abs(e.lambda2) <= opts.tol_eigen) {
    throw Error(ErrorKind::DegenerateEigen, "lambda2 = M_p vanishes");
  }
  e.lambda = e.lambda2 / e.lambda1;

  if (auto f = rational_within(e.lambda, opts.qmax, opts.tol_rational)) {
    e.rationality.value = *f;
    if (f->den == 1) {
      e.rationality.kind = RationalityKind::Integer;
    } else if (f->num == 1 || f->num == -1) {
      e.rationality.kind = RationalityKind::ReciprocalInteger;
    } else {
      e.rationality.kind = RationalityKind::Rational;
    }
    if (e.lambda < 0.0) {
      // p*l1 + q*l2 = l1 (p + q*lambda) = 0 with lambda = -p/q.
      const int rp = static_cast<int>(-f->num);
      const int rq = static_cast<int>(f->den);
      e.resonance = Resonance{rp, rq, rp + rq};
    }
  }
  return e;
}

std::optional<Resonance> resonance_find(double lambda1, double lambda2, int max_order,
                                        double tol) {
  if (lambda1 == 0.0 || lambda2 == 0.0) {
    throw Error(ErrorKind::InvalidInput, "resonance_find needs nonzero eigenvalues");
  }
  if (max_order < 1) throw Error(ErrorKind::InvalidInput, "max_order must be >= 1");
  if ((lambda1 > 0.0) == (lambda2 > 0.0)) return std::nullopt;
  for (int order = 2; order <= max_order; ++order) {
    for (int p = 1; p < order; ++p) {
      const int q = order - p;
      const double lhs = std::abs(p * lambda1 + q * lambda2);
      if (lhs <= tol * (p * std::abs(lambda1) + q * std::abs(lambda2))) {
        return Resonance{p, q, order};
      }
    }
  }
  return std::nullopt;
}

int samovol_order(int k, double lambda1, double lambda2) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "samovol_order needs k >= 1");
  if (lambda1 == 0.0 || lambda2 == 0.0) {
    throw Error(ErrorKind::InvalidInput, "samovol_order needs nonzero eigenvalues");
  }
  const double m1 = std::max(std::abs(lambda1), std::abs(lambda2));
  const double m2 = std::min(std::abs(lambda1), std::abs(lambda2));
  return 2 * static_cast<int>(std::floor((2.0 * k + 1.0) * m1 / m2)) + 2;
}

namespace {

Classification classify_finite(const SingularOde& ode, PlanePoint q, double slope,
                               const AnalysisOptions& opts, Classification c) {
  const auto coeffs = ode.m.coefficients_at(q);
  if (all_mu_vanish(coeffs, opts.tol_mu)) {
    // M(q, .) vanishes identically: every slope is a root of unbounded order.
    c.verdict = Verdict::MultipleRoot;
    return c;
  }
  std::optional<RealRoot> match;
  for (const RealRoot& r : real_roots(coeffs, opts.tol_mu, opts.tol_root)) {
    if (std::abs(r.value - slope) <= opts.tol_root * std::max(1.0, std::abs(slope))) {
      match = r;
      break;
    }
  }
  if (!match) {
    c.verdict = Verdict::NotAdmissible;
    return c;
  }
  c.multiplicity = match->multiplicity;
  c.chart_slope = match->value;
  if (match->multiplicity > 1) {
    c.verdict = Verdict::MultipleRoot;
    return c;
  }

  EigenData e;
  try {
    e = eigen_data(ode, q, Direction::from_slope(match->value), opts);
  } catch (const Error& err) {
    c.verdict = err.kind() == ErrorKind::NonTransversal ? Verdict::NonTransversal
                                                        : Verdict::MultipleRoot;
    return c;
  }
  c.eigen = e;

  const double lambda = e.lambda;
  const auto kind = e.rationality.kind;
  if (lambda < 0.0) {
    if (kind == RationalityKind::Irrational) {
      c.verdict = Verdict::Saddle;
      c.family_form = FamilyForm{FamilyKind::UniqueSmooth, lambda, false};
      c.smoothness_note = SmoothnessNote{
          SmoothnessKind::Samovol, samovol_order(opts.samovol_k, e.lambda1, e.lambda2),
          opts.samovol_k};
    } else {
      c.verdict = Verdict::NegativeRationalResonant;
      const Resonance& r = *e.resonance;
      c.smoothness_note =
          SmoothnessNote{SmoothnessKind::ResonantReduction, r.order, std::max(r.p, r.q) - 1};
    }
    return c;
  }

  if (kind == RationalityKind::Integer) {
    c.verdict = Verdict::NodePositiveResonant;
    c.family_form = FamilyForm{FamilyKind::PowerLog, static_cast<double>(e.rationality.value.num), true};
  } else if (kind == RationalityKind::ReciprocalInteger) {
    c.verdict = Verdict::NodeReciprocalResonant;
    c.family_form = FamilyForm{FamilyKind::Power, lambda, false};
  } else {
    c.verdict = Verdict::NodeNonResonant;
    c.family_form = FamilyForm{FamilyKind::Power, lambda, false};
    c.smoothness_note = SmoothnessNote{
        SmoothnessKind::Samovol, samovol_order(opts.samovol_k, e.lambda1, e.lambda2),
        opts.samovol_k};
  }
  return c;
}

}  // namespace

Classification classify(const SingularOde& ode, PlanePoint q, Direction dir,
                        const AnalysisOptions& opts) {
  Classification c;
  c.dir = dir;
  if (!on_singular_locus(ode, q, opts.tol_locus)) {
    c.verdict = Verdict::NotSingular;
    return c;
  }
  if (locus_regularity(ode, q, opts) == LocusRegularity::Degenerate) {
    c.verdict = Verdict::DegenerateLocus;
    return c;
  }
  if (dir.is_infinite()) {
    c.swapped_chart = true;
    return classify_finite(swap_axes(ode), PlanePoint{q.y, q.x}, 0.0, opts, c);
  }
  return classify_finite(ode, q, dir.slope(), opts, c);
}

OscillationVerdict oscillation_excluded(const SingularOde& ode, PlanePoint q,
                                        const AnalysisOptions& opts) {
  require_on_locus(ode, q, opts.tol_locus);
  return all_mu_vanish(ode.m.coefficients_at(q), opts.tol_mu) ? OscillationVerdict::NotExcluded
                                                               : OscillationVerdict::Excluded;
}

GeodesicCondition geodesic_oscillation_necessary(const Metric& g, PlanePoint q,
                                                 const AnalysisOptions& opts) {
  const SingularOde ode = geodesic_from_metric(g);
  require_on_locus(ode, q, opts.tol_locus);
  const auto grad = delta_gradient(ode, q);
  return std::hypot(grad[0], grad[1]) <= opts.tol_gradient ? GeodesicCondition::ConditionHolds
                                                           : GeodesicCondition::ConditionFails;
}

}  // namespace singode
