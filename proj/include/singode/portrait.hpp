#pragma once

#include <string>
#include <vector>

#include "singode/integrator.hpp"
#include "singode/report.hpp"

namespace singode {

struct PortraitOptions {
  int nx = 21;
  int ny = 21;
  std::vector<double> slices{-1.0, 0.0, 1.0};  ///< slopes p at which the field is sampled
  double arc_fraction = 0.35;  ///< arc half-width as a fraction of the lattice spacing
  int max_points = 3;          ///< singular points that get traced pencils
  int pencil_size = 5;         ///< traced curves per node side
  TraceOptions trace;
};

struct FieldSample {
  JetPoint at;
  FieldValue value;
};

/// Parabolic arc y0 + p s + k s^2 / 2 for s in [-h, h], k = M / Delta.
struct Arc {
  PlanePoint center;
  double p = 0.0;
  double curvature = 0.0;
  double half_width = 0.0;
};

struct Pencil {
  PlanePoint q;
  Direction dir;
  Verdict verdict = Verdict::NotSingular;
  std::vector<Trajectory> curves;  ///< plane coordinates, even for p = infinity
};

struct Portrait {
  Window window;
  std::vector<FieldSample> samples;
  std::vector<Arc> arcs;
  std::vector<std::pair<PlanePoint, PlanePoint>> locus;  ///< polyline pieces of the locus
  std::vector<Pencil> pencils;
};

Portrait make_portrait(const SingularOde& ode, const Window& w, const PortraitOptions& opts = {});

std::string portrait_svg(const Portrait& p);
std::string portrait_csv(const Portrait& p);

}  // namespace singode
