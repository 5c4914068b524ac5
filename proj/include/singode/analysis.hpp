#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "singode/model.hpp"
#include "singode/rational.hpp"

namespace singode {

/// Tolerances for pointwise analysis. Nothing below is hard-coded inside the
/// operations; every threshold comes from here.
struct AnalysisOptions {
  double tol_locus = 1e-10;     ///< |Delta(q)| <= tol_locus puts q on the singular locus.
  double tol_gradient = 1e-10;  ///< |grad Delta(q)| <= tol_gradient is a degenerate locus point.
  double tol_mu = 1e-10;        ///< |mu_i(q)| <= tol_mu counts as a vanishing coefficient.
  double tol_root = 1e-7;       ///< root clustering radius (scaled by max(1, |root|)).
  double tol_eigen = 1e-9;      ///< |lambda_{1,2}| <= tol_eigen counts as zero.
  double tol_rational = 1e-9;   ///< relative tolerance for recognising lambda as rational.
  int qmax = 64;                ///< denominator bound for the rational test.
  int samovol_k = 1;            ///< smoothness class reported in Samovol notes.
};

enum class LocusRegularity { Regular, Degenerate };

struct AdmissibleDirection {
  Direction dir;
  int multiplicity = 1;
};

/// Admissible tangential directions at a singular point, finite ones in
/// ascending slope order followed by p = infinity when present.
struct AdmissibleSet {
  bool all_directions_degenerate = false;
  std::vector<AdmissibleDirection> directions;

  int total_multiplicity() const;
};

enum class RationalityKind { Integer, ReciprocalInteger, Rational, Irrational };

struct Rationality {
  RationalityKind kind = RationalityKind::Irrational;
  Fraction value;  ///< meaningful unless kind == Irrational
};

/// p * lambda1 + q * lambda2 = 0 with positive integers p, q.
struct Resonance {
  int p = 0;
  int q = 0;
  int order = 0;
  friend bool operator==(const Resonance&, const Resonance&) = default;
};

struct EigenData {
  double lambda1 = 0.0;  ///< Delta_x + p Delta_y
  double lambda2 = 0.0;  ///< M_p
  double lambda = 0.0;   ///< lambda2 / lambda1
  Rationality rationality;
  std::optional<Resonance> resonance;
};

enum class Verdict {
  NotSingular,
  DegenerateLocus,
  NotAdmissible,
  NonTransversal,
  MultipleRoot,
  Saddle,
  NodeNonResonant,
  NodePositiveResonant,
  NodeReciprocalResonant,
  NegativeRationalResonant,
};

std::string_view to_string(Verdict v);
bool is_traceable(Verdict v);
bool is_node(Verdict v);

enum class FamilyKind {
  UniqueSmooth,  ///< a single smooth solution passes through the point
  Power,         ///< y = F(x, c|x|^lambda)
  PowerLog,      ///< y = F(x, x^n (c + eps ln|x|))
};

std::string_view to_string(FamilyKind k);

struct FamilyForm {
  FamilyKind kind = FamilyKind::Power;
  double exponent = 0.0;
  bool log_possible = false;
};

enum class SmoothnessKind {
  Samovol,            ///< C^k normal form if no resonance up to `order`
  ResonantReduction,  ///< resonance of `order`; reduction only C^smoothness
};

struct SmoothnessNote {
  SmoothnessKind kind = SmoothnessKind::Samovol;
  int order = 0;
  int smoothness = 0;
};

struct Classification {
  Verdict verdict = Verdict::NotSingular;
  Direction dir = Direction::from_slope(0.0);
  int multiplicity = 0;
  /// Root slope used for the eigen data, in the chart given by swapped_chart.
  double chart_slope = 0.0;
  /// Eigen data are computed in the axis-swapped chart for p = infinity.
  bool swapped_chart = false;
  std::optional<EigenData> eigen;
  std::optional<FamilyForm> family_form;
  std::optional<SmoothnessNote> smoothness_note;
};

enum class OscillationVerdict { Excluded, NotExcluded };
enum class GeodesicCondition { ConditionHolds, ConditionFails };

std::string_view to_string(OscillationVerdict v);
std::string_view to_string(GeodesicCondition v);
std::string_view to_string(RationalityKind k);

std::array<double, 2> delta_gradient(const SingularOde& ode, PlanePoint q);

bool on_singular_locus(const SingularOde& ode, PlanePoint q, double tol);

/// Throws NotOnLocus when |Delta(q)| > tol_locus.
LocusRegularity locus_regularity(const SingularOde& ode, PlanePoint q,
                                 const AnalysisOptions& opts = {});

/// Real roots of M(q, p) plus p = infinity (multiplicity of p = 0 in M*).
AdmissibleSet admissible_directions(const SingularOde& ode, PlanePoint q,
                                    const AnalysisOptions& opts = {});

/// Eigenvalues of the lifted field at (q, p) for a finite admissible slope p.
/// Throws NonTransversal / DegenerateEigen when lambda1 / lambda2 vanish.
EigenData eigen_data(const SingularOde& ode, PlanePoint q, Direction dir,
                     const AnalysisOptions& opts = {});

/// Smallest-order resonance p*l1 + q*l2 = 0 with p + q <= max_order, relative
/// tolerance tol. Ties within an order go to the smaller p.
std::optional<Resonance> resonance_find(double lambda1, double lambda2, int max_order,
                                        double tol);

/// N(k) = 2 floor((2k+1) m1/m2) + 2 with m1, m2 the larger and smaller |lambda|.
int samovol_order(int k, double lambda1, double lambda2);

Classification classify(const SingularOde& ode, PlanePoint q, Direction dir,
                        const AnalysisOptions& opts = {});

/// Excluded iff some mu_i(q) is nonzero. Throws NotOnLocus off the locus.
OscillationVerdict oscillation_excluded(const SingularOde& ode, PlanePoint q,
                                        const AnalysisOptions& opts = {});

/// For geodesics an oscillating solution needs d Delta(q) = 0.
/// ConditionFails means no oscillating geodesic issues from q.
GeodesicCondition geodesic_oscillation_necessary(const Metric& g, PlanePoint q,
                                                 const AnalysisOptions& opts = {});

}  // namespace singode
