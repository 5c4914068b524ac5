#include "singode/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace singode {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::LeftBox: return "LeftBox";
    case Termination::MaxSteps: return "MaxSteps";
    case Termination::TimeLimit: return "TimeLimit";
    case Termination::NearSingular: return "NearSingular";
    case Termination::Stalled: return "Stalled";
    case Termination::LocusRecross: return "LocusRecross";
  }
  return "Unknown";
}

std::string_view to_string(Side s) { return s == Side::Plus ? "plus" : "minus"; }

std::string_view to_string(TimeDirection d) {
  return d == TimeDirection::Forward ? "forward" : "backward";
}

bool Box::contains(const JetPoint& t) const {
  return t.x >= x_min && t.x <= x_max && t.y >= y_min && t.y <= y_max &&
         std::abs(t.p) <= p_abs_max;
}

namespace {

using State = std::array<double, 3>;

State rhs(const SingularOde& ode, const State& s, double sign) {
  const FieldValue f = field_eval(ode, {s[0], s[1], s[2]});
  return {sign * f.dx, sign * f.dy, sign * f.dp};
}

State axpy(const State& s, double h, std::initializer_list<std::pair<double, const State*>> ks) {
  State out = s;
  for (const auto& [a, k] : ks) {
    for (int i = 0; i < 3; ++i) out[i] += h * a * (*k)[i];
  }
  return out;
}

struct StepResult {
  State next;
  double error_norm;
};

// One Dormand-Prince 5(4) step; error measured against abs/rel tolerances.
StepResult dopri_step(const SingularOde& ode, const State& s, double h, double sign,
                      const IntegratorOptions& o) {
  const State k1 = rhs(ode, s, sign);
  const State k2 = rhs(ode, axpy(s, h, {{1.0 / 5, &k1}}), sign);
  const State k3 = rhs(ode, axpy(s, h, {{3.0 / 40, &k1}, {9.0 / 40, &k2}}), sign);
  const State k4 =
      rhs(ode, axpy(s, h, {{44.0 / 45, &k1}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}}), sign);
  const State k5 = rhs(ode,
                       axpy(s, h,
                            {{19372.0 / 6561, &k1},
                             {-25360.0 / 2187, &k2},
                             {64448.0 / 6561, &k3},
                             {-212.0 / 729, &k4}}),
                       sign);
  const State k6 = rhs(ode,
                       axpy(s, h,
                            {{9017.0 / 3168, &k1},
                             {-355.0 / 33, &k2},
                             {46732.0 / 5247, &k3},
                             {49.0 / 176, &k4},
                             {-5103.0 / 18656, &k5}}),
                       sign);
  const State next = axpy(s, h,
                          {{35.0 / 384, &k1},
                           {500.0 / 1113, &k3},
                           {125.0 / 192, &k4},
                           {-2187.0 / 6784, &k5},
                           {11.0 / 84, &k6}});
  const State k7 = rhs(ode, next, sign);

  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double err =
        h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double scale = o.abs_tol + o.rel_tol * std::max(std::abs(s[i]), std::abs(next[i]));
    sum += (err / scale) * (err / scale);
  }
  return {next, std::sqrt(sum / 3.0)};
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

bool finite_state(const State& s) {
  return std::isfinite(s[0]) && std::isfinite(s[1]) && std::isfinite(s[2]);
}

}  // namespace

Trajectory integrate(const SingularOde& ode, const JetPoint& start, TimeDirection direction,
                     const IntegratorOptions& opts) {
  Trajectory traj;
  traj.meta.start = start;
  traj.meta.direction = direction;
  const double sign = direction == TimeDirection::Forward ? 1.0 : -1.0;
  traj.samples.push_back({0.0, start.x, start.y, start.p});

  int delta_sign = sign_of(ode.delta.eval(start.plane()));
  traj.meta.side = delta_sign < 0 ? Side::Minus : Side::Plus;
  if (field_eval(ode, start).norm() < opts.stall_norm) {
    traj.meta.reason = Termination::Stalled;
    return traj;
  }

  State s{start.x, start.y, start.p};
  double tau = 0.0;
  double h = std::min(opts.initial_step, opts.max_step);
  int x_dir = 0;
  std::size_t steps = 0;
  while (true) {
    if (steps >= opts.max_steps) {
      traj.meta.reason = Termination::MaxSteps;
      return traj;
    }
    if (tau >= opts.t_max) {
      traj.meta.reason = Termination::TimeLimit;
      return traj;
    }
    h = std::min(h, opts.t_max - tau);

    const StepResult step = dopri_step(ode, s, h, sign, opts);
    const bool ok = std::isfinite(step.error_norm) && step.error_norm <= 1.0;
    if (!ok) {
      const double shrink = std::isfinite(step.error_norm)
                                ? std::max(0.2, 0.9 * std::pow(step.error_norm, -0.2))
                                : 0.2;
      h *= shrink;
      if (h < opts.min_step) {
        throw StepSizeUnderflow("adaptive step fell below min_step", std::move(traj));
      }
      continue;
    }

    tau += h;
    ++steps;
    const State& next = step.next;
    const JetPoint jet{next[0], next[1], next[2]};
    if (!finite_state(next) || !opts.box.contains(jet)) {
      traj.meta.reason = Termination::LeftBox;
      return traj;
    }
    const int new_sign = sign_of(ode.delta.eval(jet.plane()));
    if (delta_sign != 0 && new_sign == -delta_sign) {
      traj.meta.reason = Termination::LocusRecross;
      return traj;
    }
    if (delta_sign == 0) delta_sign = new_sign;
    const int step_dir = sign_of(next[0] - s[0]);
    if (x_dir == 0) {
      x_dir = step_dir;
    } else if (step_dir == -x_dir) {
      traj.meta.reason = Termination::LocusRecross;
      return traj;
    }

    s = next;
    traj.samples.push_back({sign * tau, s[0], s[1], s[2]});

    const FieldValue f = field_eval(ode, jet);
    if (f.norm() < opts.stall_norm) {
      traj.meta.reason = Termination::Stalled;
      return traj;
    }
    if (std::max(std::abs(f.dx), std::abs(f.dp)) <= opts.stop_radius) {
      traj.meta.reason = Termination::NearSingular;
      return traj;
    }

    const double grow =
        step.error_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(step.error_norm, -0.2), 0.2, 5.0);
    h = std::min(h * grow, opts.max_step);
  }
}

std::vector<Trajectory> trace_from_singular(const SingularOde& ode, PlanePoint q0,
                                            Direction dir, Side side,
                                            std::span<const double> offsets,
                                            const TraceOptions& opts) {
  std::vector<Trajectory> out;
  if (offsets.empty()) return out;

  const Classification cls = classify(ode, q0, dir, opts.analysis);
  if (!is_traceable(cls.verdict) || !cls.eigen) {
    throw Error(ErrorKind::InvalidInput,
                "point/direction is not traceable: " + std::string(to_string(cls.verdict)));
  }
  const SingularOde work = cls.swapped_chart ? swap_axes(ode) : ode;
  const PlanePoint q = cls.swapped_chart ? PlanePoint{q0.y, q0.x} : q0;
  const double p_i = cls.chart_slope;
  const EigenData& e = *cls.eigen;

  const JetPoint t0{q.x, q.y, p_i};
  const Matrix3 j = jacobian(work, t0);
  // Non-vertical eigenvector (1, p_i, v3) of lambda1.
  double v3 = 0.0;
  const double gap = e.lambda1 - e.lambda2;
  if (std::abs(gap) > opts.analysis.tol_eigen) v3 = (j[2][0] + p_i * j[2][1]) / gap;

  const double l1_sign = e.lambda1 > 0.0 ? 1.0 : -1.0;
  const TimeDirection away = e.lambda1 > 0.0 ? TimeDirection::Forward : TimeDirection::Backward;
  const bool saddle_like = e.lambda < 0.0;

  IntegratorOptions io = opts.integrator;
  if (!std::isfinite(io.max_step)) {
    io.max_step = opts.max_step_factor / std::max(std::abs(e.lambda1), std::abs(e.lambda2));
  }
  const double y_reach = opts.extent * (2.0 + std::abs(p_i));
  io.box = Box{q.x - opts.extent, q.x + opts.extent, q.y - y_reach, q.y + y_reach,
               io.box.p_abs_max};

  const double side_sign = side == Side::Plus ? 1.0 : -1.0;
  for (double offset : offsets) {
    double s = 0.0;
    double dp = 0.0;
    double want = 0.0;  // required sign of Delta at the seed
    if (saddle_like) {
      s = offset * l1_sign;
      want = offset > 0.0 ? 1.0 : -1.0;
    } else {
      s = side_sign * l1_sign * opts.seed_distance;
      dp = offset;
      want = side_sign;
    }
    const JetPoint seed{q.x + s, q.y + p_i * s, p_i + v3 * s + dp};
    const double d_seed = work.delta.eval(seed.plane());
    if (s == 0.0 || d_seed * want <= 0.0) {
      throw Error(ErrorKind::SeedRejected, "seed for offset " + std::to_string(offset) +
                                               " does not lie on the requested side of the locus");
    }
    Trajectory traj = integrate(work, seed, away, io);
    std::reverse(traj.samples.begin(), traj.samples.end());
    traj.meta.reversed = true;
    traj.meta.swapped_chart = cls.swapped_chart;
    traj.meta.offset = offset;
    out.push_back(std::move(traj));
  }
  return out;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  LineFit f;
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double r = ys[k] - (f.intercept + f.slope * xs[k]);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

constexpr std::size_t kMinWindowSamples = 20;

struct ChartPoint {
  double x0;
  double p_i;
};

ChartPoint chart_point(PlanePoint q0, Direction dir) {
  if (dir.is_infinite()) return {q0.y, 0.0};
  return {q0.x, dir.slope()};
}

// Runs `fit` over every usable trajectory on the first trajectory's side.
template <class Transform>
FamilyEstimate fit_family(std::span<const Trajectory> trajectories, PlanePoint q0,
                          Direction dir, const FitWindow& window, Transform transform) {
  if (trajectories.empty()) {
    throw Error(ErrorKind::InsufficientSamples, "no trajectories");
  }
  const ChartPoint cp = chart_point(q0, dir);
  FamilyEstimate est;
  est.side = trajectories.front().meta.side;
  double slope_sum = 0.0, intercept_sum = 0.0, rms_sum = 0.0;
  int used = 0;
  for (const Trajectory& traj : trajectories) {
    if (traj.meta.side != est.side) continue;
    std::vector<double> xs, ys;
    for (const Sample& s : traj.samples) {
      const double dx = s.x - cp.x0;
      const double r = std::abs(dx);
      if (r < window.lo || r > window.hi) continue;
      double u = 0.0, v = 0.0;
      if (transform(dx, s.p - cp.p_i, u, v)) {
        xs.push_back(u);
        ys.push_back(v);
      }
    }
    if (xs.size() < kMinWindowSamples) continue;
    const LineFit f = least_squares(xs, ys);
    slope_sum += f.slope;
    intercept_sum += f.intercept;
    rms_sum += f.rms;
    ++used;
  }
  if (used < 2) {
    throw Error(ErrorKind::InsufficientSamples,
                "need two trajectories with >= 20 samples in the fit window, have " +
                    std::to_string(used));
  }
  est.trajectories_used = used;
  est.exponent_hat = slope_sum / used;
  est.intercept_hat = intercept_sum / used;
  est.fit_residual = rms_sum / used;
  return est;
}

}  // namespace

FamilyEstimate estimate_exponent(std::span<const Trajectory> trajectories, PlanePoint q0,
                                 Direction dir, const FitWindow& window) {
  return fit_family(trajectories, q0, dir, window,
                    [](double dx, double dev, double& u, double& v) {
                      if (dev == 0.0 || !std::isfinite(dev)) return false;
                      u = std::log(std::abs(dx));
                      v = std::log(std::abs(dev));
                      return true;
                    });
}

FamilyEstimate detect_log_term(std::span<const Trajectory> trajectories, PlanePoint q0,
                               Direction dir, int n, const FitWindow& window) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "log term order must be >= 1");
  FamilyEstimate est = fit_family(trajectories, q0, dir, window,
                                  [n](double dx, double dev, double& u, double& v) {
                                    u = std::log(std::abs(dx));
                                    v = dev / std::pow(dx, n);
                                    return std::isfinite(v);
                                  });
  est.log_coefficient_hat = est.exponent_hat;
  est.exponent_hat = static_cast<double>(n);
  return est;
}

std::string_view to_string(OscillationKind k) {
  switch (k) {
    case OscillationKind::Proper: return "proper";
    case OscillationKind::Oscillating: return "oscillating";
    case OscillationKind::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

OscillationReport oscillation_detect(const Trajectory& traj, PlanePoint q0,
                                     const OscillationOptions& opts) {
  if (!(opts.gamma > 0.0 && opts.gamma < 1.0)) {
    throw Error(ErrorKind::InvalidInput, "window ratio gamma must lie in (0, 1)");
  }
  OscillationReport rep;
  const double x0 = traj.meta.swapped_chart ? q0.y : q0.x;

  struct Pt {
    double r;
    double p;
  };
  std::vector<Pt> pts;
  for (const Sample& s : traj.samples) {
    const double r = std::abs(s.x - x0);
    if (r > 0.0 && std::isfinite(s.p)) pts.push_back({r, s.p});
  }
  if (pts.size() < 3) {
    rep.rule = "too_few_samples";
    return rep;
  }
  // Approach order: decreasing distance to x0.
  std::stable_sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.r > b.r; });

  const double outer = opts.radius > 0.0 ? opts.radius : pts.front().r;
  const double inner = pts.back().r;
  int windows = 0;
  while (outer * std::pow(opts.gamma, windows + 1) >= inner) ++windows;
  rep.extrema_counts.assign(static_cast<std::size_t>(windows), 0);

  auto window_of = [&](double r) -> int {
    if (r > outer) return -1;
    const int k = static_cast<int>(std::floor(std::log(r / outer) / std::log(opts.gamma)));
    return k < windows ? k : -1;
  };

  std::vector<double> extrema;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double a = pts[i].p - pts[i - 1].p;
    const double b = pts[i + 1].p - pts[i].p;
    if (a * b < 0.0) {
      const int k = window_of(pts[i].r);
      if (k >= 0) {
        ++rep.extrema_counts[static_cast<std::size_t>(k)];
        extrema.push_back(pts[i].p);
      }
    }
  }

  int run = 0;
  for (int count : rep.extrema_counts) {
    run = count >= opts.min_extrema ? run + 1 : 0;
    if (run >= opts.consecutive) {
      rep.verdict = OscillationKind::Oscillating;
      rep.rule = "windowed_extrema";
      return rep;
    }
  }

  if (static_cast<int>(extrema.size()) >= opts.min_extrema) {
    bool persistent = true;
    double prev = 0.0;
    for (std::size_t k = 1; k < extrema.size(); ++k) {
      const double swing = std::abs(extrema[k] - extrema[k - 1]);
      if (k > 1 && swing < opts.swing_ratio * prev) persistent = false;
      prev = swing;
    }
    if (persistent && prev >= opts.min_swing) {
      rep.verdict = OscillationKind::Oscillating;
      rep.rule = "persistent_swing";
      return rep;
    }
  }

  if (windows >= opts.consecutive) {
    const double tail = outer * std::pow(opts.gamma, windows - opts.consecutive);
    double lo = INFINITY, hi = -INFINITY, inv_lo = INFINITY, inv_hi = -INFINITY;
    for (const Pt& pt : pts) {
      if (pt.r > tail) continue;
      lo = std::min(lo, pt.p);
      hi = std::max(hi, pt.p);
      const double inv = pt.p != 0.0 ? 1.0 / pt.p : INFINITY;
      inv_lo = std::min(inv_lo, inv);
      inv_hi = std::max(inv_hi, inv);
    }
    if (hi - lo < opts.tol) {
      rep.verdict = OscillationKind::Proper;
      rep.rule = "finite_limit";
      rep.p_limit_hat = pts.back().p;
      return rep;
    }
    if (std::abs(pts.back().p) > 1.0 / opts.tol && inv_hi - inv_lo < opts.tol) {
      rep.verdict = OscillationKind::Proper;
      rep.rule = "infinite_limit";
      rep.p_limit_hat = std::copysign(INFINITY, pts.back().p);
      return rep;
    }
  }
  rep.rule = "undecided";
  return rep;
}

}  // namespace singode
