#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "singode/analysis.hpp"

namespace singode {

struct Window {
  double x_min = -1.0;
  double x_max = 1.0;
  double y_min = -1.0;
  double y_max = 1.0;

  bool empty() const;
};

/// Points where the lattice detects the singular locus: lattice nodes with
/// Delta == 0 and bisected sign changes along lattice edges. Sorted and
/// deduplicated.
std::vector<PlanePoint> locus_crossings(const SingularOde& ode, const Window& w, int nx, int ny);

nlohmann::json options_to_json(const AnalysisOptions& opts);

/// Classification report for one point.
nlohmann::json point_report(const SingularOde& ode, PlanePoint q, const AnalysisOptions& opts = {},
                            const std::optional<Metric>& metric = std::nullopt);

/// Verdict map over an nx-by-ny lattice plus a full report at every crossing.
nlohmann::json grid_report(const SingularOde& ode, const Window& w, int nx, int ny,
                           const AnalysisOptions& opts = {},
                           const std::optional<Metric>& metric = std::nullopt);

}  // namespace singode
