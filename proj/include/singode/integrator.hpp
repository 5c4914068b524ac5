#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "singode/analysis.hpp"
#include "singode/error.hpp"
#include "singode/lifted_field.hpp"

namespace singode {

enum class TimeDirection { Forward, Backward };
enum class Side { Plus, Minus };  ///< sign of Delta on the traced side of the locus

enum class Termination {
  LeftBox,
  MaxSteps,
  TimeLimit,
  NearSingular,  ///< max(|Delta|, |M|) fell below the stop radius
  Stalled,       ///< |field| below the stall threshold
  LocusRecross,  ///< Delta changed sign or x reversed
};

std::string_view to_string(Termination t);
std::string_view to_string(Side s);
std::string_view to_string(TimeDirection d);

struct Box {
  double x_min = -std::numeric_limits<double>::infinity();
  double x_max = std::numeric_limits<double>::infinity();
  double y_min = -std::numeric_limits<double>::infinity();
  double y_max = std::numeric_limits<double>::infinity();
  double p_abs_max = 1e8;

  bool contains(const JetPoint& t) const;
};

struct IntegratorOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  std::size_t max_steps = 200000;
  double initial_step = 1e-4;
  double max_step = std::numeric_limits<double>::infinity();
  double min_step = 1e-14;
  double t_max = std::numeric_limits<double>::infinity();  ///< bound on |t|
  Box box;
  double stop_radius = 1e-12;
  double stall_norm = 1e-14;
};

struct Sample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double p = 0.0;
};

struct TrajectoryMeta {
  std::string ode_id;
  JetPoint start;
  TimeDirection direction = TimeDirection::Forward;
  Termination reason = Termination::MaxSteps;
  Side side = Side::Plus;  ///< sign of Delta at the start (Plus when zero)
  /// Samples are in the axis-swapped chart (x and y interchanged, p = dx/dy).
  bool swapped_chart = false;
  /// Sample order was reversed so that the curve approaches the singular point.
  bool reversed = false;
  double offset = 0.0;
};

struct Trajectory {
  std::vector<Sample> samples;
  TrajectoryMeta meta;
};

/// Thrown when the adaptive step falls below min_step; carries the samples
/// integrated so far.
class StepSizeUnderflow : public Error {
 public:
  StepSizeUnderflow(const std::string& what, Trajectory partial)
      : Error(ErrorKind::StepSizeUnderflow, what), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

/// Dormand-Prince 5(4) integration of the lifted field from `start`.
Trajectory integrate(const SingularOde& ode, const JetPoint& start, TimeDirection direction,
                     const IntegratorOptions& opts = {});

struct FitWindow {
  double lo = 1e-2;
  double hi = 1e-1;
};

struct TraceOptions {
  AnalysisOptions analysis;
  IntegratorOptions integrator;
  double seed_distance = 1e-3;  ///< |x - x0| of node seeds
  double extent = 1.0;          ///< half-width of the tracing box around q0
  /// Max time step as a fraction of 1 / max(|lambda1|, |lambda2|); ignored
  /// when integrator.max_step is finite.
  double max_step_factor = 0.02;
};

/// Integral curves of the lifted field entering (q0, p_i), one per offset.
///
/// Saddle-like points (lambda < 0): the seed is T0 + s v1 with v1 the
/// non-vertical eigenvector normalised to unit x-component and s chosen so the
/// seed lies at x-distance |offset| on the side sign(offset); `side` is unused.
/// Nodes: the seed is T0 + s v1 + offset e_p with |s| = seed_distance on the
/// requested side, so the offset moves along the vertical eigendirection and
/// selects the family member. Curves are integrated away from T0 and their
/// samples reversed. For p = infinity everything happens in the swapped chart.
std::vector<Trajectory> trace_from_singular(const SingularOde& ode, PlanePoint q0,
                                            Direction dir, Side side,
                                            std::span<const double> offsets,
                                            const TraceOptions& opts = {});

struct FamilyEstimate {
  Side side = Side::Plus;
  double exponent_hat = 0.0;
  double log_coefficient_hat = 0.0;
  double intercept_hat = 0.0;
  double fit_residual = 0.0;
  int trajectories_used = 0;
};

/// Slope of log|p - p_i| against log|x - x0| over the fit window, averaged
/// over trajectories. Needs >= 2 usable trajectories with >= 20 window samples.
FamilyEstimate estimate_exponent(std::span<const Trajectory> trajectories, PlanePoint q0,
                                 Direction dir, const FitWindow& window = {});

/// Regresses (p - p_i) / (x - x0)^n on ln|x - x0|: slope is the log
/// coefficient eps, intercept the family constant c.
FamilyEstimate detect_log_term(std::span<const Trajectory> trajectories, PlanePoint q0,
                               Direction dir, int n, const FitWindow& window = {});

enum class OscillationKind { Proper, Oscillating, Inconclusive };
std::string_view to_string(OscillationKind k);

struct OscillationOptions {
  double gamma = 0.5;           ///< window ratio
  int min_extrema = 2;          ///< extrema per window for the windowed rule
  int consecutive = 3;          ///< consecutive windows required
  double tol = 1e-2;            ///< p variation below which the approach is proper
  double min_swing = 0.1;       ///< smallest swing for the persistent-swing rule
  double swing_ratio = 0.5;     ///< successive swings may shrink at most to this ratio
  double radius = 0.0;          ///< outer window radius; 0 uses the farthest sample
};

struct OscillationReport {
  std::vector<int> extrema_counts;
  OscillationKind verdict = OscillationKind::Inconclusive;
  std::optional<double> p_limit_hat;
  std::string rule;  ///< which heuristic decided the verdict
};

/// Heuristic proper/oscillating test for a curve approaching x0.
///
/// Samples are ordered by distance to x0 and grouped into geometric windows
/// [r g^{k+1}, r g^k]. Oscillating when some run of `consecutive` windows each
/// hold >= min_extrema strict extrema of p (fast oscillation), or when p keeps
/// swinging between extrema with amplitude >= min_swing that does not decay
/// faster than swing_ratio (slow, log-periodic oscillation). Proper when p, or
/// 1/p for an infinite limit, varies less than tol over the last windows.
OscillationReport oscillation_detect(const Trajectory& traj, PlanePoint q0,
                                     const OscillationOptions& opts = {});

}  // namespace singode
