#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "singode/model.hpp"

namespace singode {

/// A loaded equation file. Metric inputs are converted to their geodesic
/// equation on load; the metric itself is kept for geodesic-specific checks.
struct EquationInput {
  SingularOde ode;
  std::optional<Metric> metric;
};

// Schema:
//   {"delta": [[i,j,coef],...], "mu": [[...],[...],[...],[...]]}
//   {"metric": {"a": [[i,j,coef],...], "b": [...], "c": [...]}}
EquationInput parse_equation(const nlohmann::json& doc);
EquationInput parse_equation_text(const std::string& text);
EquationInput load_equation(const std::filesystem::path& path);

nlohmann::json poly_to_json(const Poly2& f);
Poly2 poly_from_json(const nlohmann::json& terms);
nlohmann::json equation_to_json(const SingularOde& ode);
nlohmann::json metric_to_json(const Metric& g);

}  // namespace singode
