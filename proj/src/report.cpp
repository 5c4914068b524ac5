#include "singode/report.hpp"

#include <algorithm>
#include <cmath>

#include "singode/error.hpp"

namespace singode {

using nlohmann::json;

bool Window::empty() const {
  const bool finite = std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(y_min) &&
                      std::isfinite(y_max);
  return !finite || !(x_min < x_max) || !(y_min < y_max);
}

namespace {

double lattice(double lo, double hi, int k, int n) {
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
}

void check_grid(const Window& w, int nx, int ny) {
  if (w.empty()) throw Error(ErrorKind::InvalidInput, "window is empty");
  if (nx < 2 || ny < 2) throw Error(ErrorKind::InvalidInput, "grid needs at least 2x2 nodes");
}

PlanePoint bisect(const SingularOde& ode, PlanePoint a, PlanePoint b) {
  double fa = ode.delta.eval(a);
  for (int it = 0; it < 200; ++it) {
    const PlanePoint m{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
    if ((m.x == a.x || m.x == b.x) && (m.y == a.y || m.y == b.y)) break;
    const double fm = ode.delta.eval(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return std::abs(ode.delta.eval(a)) <= std::abs(ode.delta.eval(b)) ? a : b;
}

json rationality_json(const Rationality& r) {
  json j;
  j["kind"] = to_string(r.kind);
  if (r.kind == RationalityKind::Irrational) {
    j["value"] = nullptr;
  } else {
    j["value"] = std::to_string(r.value.num) + "/" + std::to_string(r.value.den);
  }
  return j;
}

json direction_json(const SingularOde& ode, PlanePoint q, const AdmissibleDirection& d,
                    const AnalysisOptions& opts) {
  const Classification c = classify(ode, q, d.dir, opts);
  json j;
  j["p"] = d.dir.is_infinite() ? json("inf") : json(d.dir.slope());
  j["multiplicity"] = d.multiplicity;
  j["chart"] = c.swapped_chart ? "swapped" : "plane";
  if (c.eigen) {
    j["lambda1"] = c.eigen->lambda1;
    j["lambda2"] = c.eigen->lambda2;
    j["lambda"] = c.eigen->lambda;
    j["rationality"] = rationality_json(c.eigen->rationality);
    if (c.eigen->resonance) {
      const Resonance& r = *c.eigen->resonance;
      j["resonance"] = {{"p", r.p}, {"q", r.q}, {"order", r.order}};
    } else {
      j["resonance"] = nullptr;
    }
  } else {
    j["lambda1"] = nullptr;
    j["lambda2"] = nullptr;
    j["lambda"] = nullptr;
    j["rationality"] = nullptr;
    j["resonance"] = nullptr;
  }
  j["verdict"] = to_string(c.verdict);
  if (c.family_form) {
    j["family_form"] = {{"kind", to_string(c.family_form->kind)},
                        {"exponent", c.family_form->exponent},
                        {"log_possible", c.family_form->log_possible}};
  } else {
    j["family_form"] = nullptr;
  }
  if (c.smoothness_note) {
    const SmoothnessNote& n = *c.smoothness_note;
    j["smoothness_note"] = {
        {"kind", n.kind == SmoothnessKind::Samovol ? "samovol" : "resonant_reduction"},
        {"order", n.order},
        {"smoothness", n.smoothness}};
  } else {
    j["smoothness_note"] = nullptr;
  }
  return j;
}

}  // namespace

std::vector<PlanePoint> locus_crossings(const SingularOde& ode, const Window& w, int nx, int ny) {
  check_grid(w, nx, ny);
  std::vector<PlanePoint> out;
  auto node = [&](int i, int k) {
    return PlanePoint{lattice(w.x_min, w.x_max, i, nx), lattice(w.y_min, w.y_max, k, ny)};
  };
  auto edge = [&](PlanePoint a, PlanePoint b) {
    const double fa = ode.delta.eval(a), fb = ode.delta.eval(b);
    if (fa == 0.0 || fb == 0.0) return;  // nodes on the locus are added directly
    if ((fa > 0.0) != (fb > 0.0)) out.push_back(bisect(ode, a, b));
  };
  for (int k = 0; k < ny; ++k) {
    for (int i = 0; i < nx; ++i) {
      const PlanePoint a = node(i, k);
      if (ode.delta.eval(a) == 0.0) out.push_back(a);
      if (i + 1 < nx) edge(a, node(i + 1, k));
      if (k + 1 < ny) edge(a, node(i, k + 1));
    }
  }
  std::sort(out.begin(), out.end(), [](PlanePoint a, PlanePoint b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  const double eps = 1e-12 * std::max({1.0, w.x_max - w.x_min, w.y_max - w.y_min});
  auto same = [eps](PlanePoint a, PlanePoint b) {
    return std::abs(a.x - b.x) <= eps && std::abs(a.y - b.y) <= eps;
  };
  out.erase(std::unique(out.begin(), out.end(), same), out.end());
  return out;
}

json options_to_json(const AnalysisOptions& o) {
  return {{"tol_locus", o.tol_locus},       {"tol_gradient", o.tol_gradient},
          {"tol_mu", o.tol_mu},             {"tol_root", o.tol_root},
          {"tol_eigen", o.tol_eigen},       {"tol_rational", o.tol_rational},
          {"qmax", o.qmax},                 {"samovol_k", o.samovol_k}};
}

json point_report(const SingularOde& ode, PlanePoint q, const AnalysisOptions& opts,
                  const std::optional<Metric>& metric) {
  if (!std::isfinite(q.x) || !std::isfinite(q.y)) {
    throw Error(ErrorKind::InvalidInput, "point must be finite");
  }
  json j;
  j["point"] = {q.x, q.y};
  j["delta"] = ode.delta.eval(q);
  const auto g = delta_gradient(ode, q);
  j["delta_gradient"] = {g[0], g[1]};
  const auto mu = ode.m.coefficients_at(q);
  j["mu"] = {mu[0], mu[1], mu[2], mu[3]};
  j["directions"] = json::array();

  if (!on_singular_locus(ode, q, opts.tol_locus)) {
    j["locus"] = "off";
    j["verdict"] = to_string(Verdict::NotSingular);
    j["all_directions_degenerate"] = false;
    j["oscillation"] = to_string(OscillationVerdict::Excluded);
  } else {
    const bool regular = locus_regularity(ode, q, opts) == LocusRegularity::Regular;
    j["locus"] = regular ? "regular" : "degenerate";
    j["verdict"] = regular ? json(nullptr) : json(to_string(Verdict::DegenerateLocus));
    const AdmissibleSet set = admissible_directions(ode, q, opts);
    j["all_directions_degenerate"] = set.all_directions_degenerate;
    if (regular) {
      for (const AdmissibleDirection& d : set.directions) {
        j["directions"].push_back(direction_json(ode, q, d, opts));
      }
    }
    j["oscillation"] = to_string(oscillation_excluded(ode, q, opts));
    if (metric) {
      j["geodesic_condition"] = to_string(geodesic_oscillation_necessary(*metric, q, opts));
    }
  }
  j["options"] = options_to_json(opts);
  return j;
}

json grid_report(const SingularOde& ode, const Window& w, int nx, int ny,
                 const AnalysisOptions& opts, const std::optional<Metric>& metric) {
  check_grid(w, nx, ny);
  json j;
  j["window"] = {w.x_min, w.x_max, w.y_min, w.y_max};
  j["nx"] = nx;
  j["ny"] = ny;
  json nodes = json::array();
  for (int k = 0; k < ny; ++k) {
    for (int i = 0; i < nx; ++i) {
      const PlanePoint q{lattice(w.x_min, w.x_max, i, nx), lattice(w.y_min, w.y_max, k, ny)};
      std::string verdict;
      if (!on_singular_locus(ode, q, opts.tol_locus)) {
        verdict = to_string(Verdict::NotSingular);
      } else if (locus_regularity(ode, q, opts) == LocusRegularity::Degenerate) {
        verdict = to_string(Verdict::DegenerateLocus);
      } else {
        verdict = "RegularLocus";
      }
      nodes.push_back({{"point", {q.x, q.y}}, {"verdict", verdict}});
    }
  }
  j["lattice"] = std::move(nodes);
  json crossings = json::array();
  for (PlanePoint q : locus_crossings(ode, w, nx, ny)) {
    json r = point_report(ode, q, opts, metric);
    r.erase("options");
    crossings.push_back(std::move(r));
  }
  j["crossings"] = std::move(crossings);
  j["options"] = options_to_json(opts);
  return j;
}

}  // namespace singode
