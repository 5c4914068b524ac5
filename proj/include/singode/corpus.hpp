#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "singode/analysis.hpp"
#include "singode/integrator.hpp"
#include "singode/model.hpp"

namespace singode {

/// Value of a closed-form solution and its derivatives at one x.
struct ClosedFormValue {
  double y = 0.0;
  double p = 0.0;   ///< dy/dx
  double dp = 0.0;  ///< d^2y/dx^2
};

struct ExpectedDirection {
  Direction dir;
  int multiplicity = 1;
  Verdict verdict = Verdict::NotSingular;
};

struct ExpectedPoint {
  PlanePoint q;
  bool all_directions_degenerate = false;
  std::vector<ExpectedDirection> directions;
  /// Verdict at p = 0 when no direction list applies (degenerate points).
  std::optional<Verdict> degenerate_verdict;
  OscillationVerdict oscillation = OscillationVerdict::Excluded;
};

enum class SampleSpacing { Logarithmic, Reciprocal };

enum class TraceCheckKind { Exponent, LogCoefficient, SaddleUnique };

/// A numeric family check traced from a singular point.
struct TraceCheck {
  std::string name;
  PlanePoint q;
  Direction dir;
  Side side = Side::Plus;
  TraceCheckKind kind = TraceCheckKind::Exponent;
  std::vector<double> offsets;
  double expected = 0.0;
  double tolerance = 0.0;
  bool relative = false;
  int n = 0;  ///< resonance order for log-term checks
};

struct CorpusEntry {
  std::string id;
  std::string description;
  SingularOde ode;
  std::optional<Metric> metric;
  std::vector<std::pair<std::string, double>> parameters;
  std::function<ClosedFormValue(double)> closed_form;
  double domain_lo = 1e-3;  ///< closed form is valid on [domain_lo, domain_hi]
  double domain_hi = 1.0;
  PlanePoint issue_point;   ///< the closed-form family issues from here
  SampleSpacing spacing = SampleSpacing::Logarithmic;
  OscillationKind closed_form_behavior = OscillationKind::Proper;
  std::vector<ExpectedPoint> expected;
  std::vector<TraceCheck> traces;
};

// Builders with explicit parameters. Closed forms are on x > 0.
CorpusEntry make_example1(double a = 1.0);                     // 2y p' = p^2
CorpusEntry make_example2(double alpha = 1.0, double beta = 2.0);  // x^4 p' = 2x^3 p - (2x^2+1) y
CorpusEntry make_example3(double alpha = 1.0, double beta = 1.0);  // x^2 p' = x p - 2y
CorpusEntry make_example4(double alpha, double c = 5.0, std::string id = "");  // x p' = a p (p^2-1)
/// x p' = alpha p + f(x), f given by coefficients f_1, f_2, ... of x^1, x^2, ...
CorpusEntry make_example5(double alpha = 2.0, std::vector<double> f = {0.0, 1.0}, double c = 0.0,
                          std::string id = "");
/// Geodesics of a dx^2 + c dy^2 with a = 1, c = y; closed form y = sqrt(2kx).
CorpusEntry make_geodesic_cy(double k = 1.0);

std::vector<CorpusEntry> corpus_list();
std::optional<CorpusEntry> corpus_find(const std::string& id);

/// max over xs of |Delta p' - M(x, y, p)| along the closed form.
double residual_check(const CorpusEntry& entry, const std::vector<double>& xs);

/// Closed-form samples on [lo, hi] as a trajectory ordered toward the issue point.
Trajectory sample_closed_form(const CorpusEntry& entry, double lo, double hi, std::size_t n);

struct CheckResult {
  std::string entry;
  std::string check;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

std::vector<CheckResult> verify_entry(const CorpusEntry& entry,
                                      const AnalysisOptions& opts = {});

}  // namespace singode
