#include "singode/portrait.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "singode/error.hpp"

namespace singode {

namespace {

double lattice(double lo, double hi, int k, int n) {
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
}

// Marching squares on sign(Delta) with zero counted as positive.
std::vector<std::pair<PlanePoint, PlanePoint>> locus_polyline(const SingularOde& ode,
                                                              const Window& w, int nx, int ny) {
  std::vector<std::pair<PlanePoint, PlanePoint>> out;
  std::vector<double> f(static_cast<std::size_t>(nx * ny));
  auto at = [&](int i, int k) -> double& { return f[static_cast<std::size_t>(k * nx + i)]; };
  auto node = [&](int i, int k) {
    return PlanePoint{lattice(w.x_min, w.x_max, i, nx), lattice(w.y_min, w.y_max, k, ny)};
  };
  for (int k = 0; k < ny; ++k)
    for (int i = 0; i < nx; ++i) at(i, k) = ode.delta.eval(node(i, k));

  auto cross = [&](int i0, int k0, int i1, int k1, std::vector<PlanePoint>& hits) {
    const double a = at(i0, k0), b = at(i1, k1);
    if ((a >= 0.0) == (b >= 0.0)) return;
    const double t = a / (a - b);
    const PlanePoint pa = node(i0, k0), pb = node(i1, k1);
    hits.push_back({pa.x + t * (pb.x - pa.x), pa.y + t * (pb.y - pa.y)});
  };
  for (int k = 0; k + 1 < ny; ++k) {
    for (int i = 0; i + 1 < nx; ++i) {
      std::vector<PlanePoint> hits;
      cross(i, k, i + 1, k, hits);
      cross(i + 1, k, i + 1, k + 1, hits);
      cross(i + 1, k + 1, i, k + 1, hits);
      cross(i, k + 1, i, k, hits);
      for (std::size_t h = 0; h + 1 < hits.size(); h += 2) out.emplace_back(hits[h], hits[h + 1]);
    }
  }
  return out;
}

Trajectory to_plane(Trajectory t) {
  if (!t.meta.swapped_chart) return t;
  for (Sample& s : t.samples) {
    std::swap(s.x, s.y);
    s.p = s.p == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / s.p;
  }
  t.meta.swapped_chart = false;
  return t;
}

void add_pencils(const SingularOde& ode, PlanePoint q, const PortraitOptions& opts,
                 const TraceOptions& topts, std::vector<Pencil>& out) {
  const AdmissibleSet set = admissible_directions(ode, q, topts.analysis);
  for (const AdmissibleDirection& d : set.directions) {
    const Classification c = classify(ode, q, d.dir, topts.analysis);
    if (!is_traceable(c.verdict) || !c.eigen) continue;
    Pencil pencil{q, d.dir, c.verdict, {}};
    auto run = [&](Side side, const std::vector<double>& offsets) {
      try {
        for (Trajectory& t : trace_from_singular(ode, q, d.dir, side, offsets, topts)) {
          pencil.curves.push_back(to_plane(std::move(t)));
        }
      } catch (const Error&) {
        // a side without admissible seeds contributes no curves
      }
    };
    if (c.eigen->lambda < 0.0) {
      run(Side::Plus, {topts.seed_distance, -topts.seed_distance});
    } else {
      // Family members separate like |x|^lambda; spread offsets on that scale.
      const double scale = std::pow(topts.seed_distance, c.eigen->lambda);
      std::vector<double> offsets;
      const int n = std::max(1, opts.pencil_size);
      for (int k = 0; k < n; ++k) {
        const double u = n == 1 ? 0.0 : -1.0 + 2.0 * k / (n - 1.0);
        offsets.push_back(2.0 * u * scale);
      }
      run(Side::Plus, offsets);
      run(Side::Minus, offsets);
    }
    out.push_back(std::move(pencil));
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* verdict_color(Verdict v) {
  switch (v) {
    case Verdict::Saddle: return "#c0392b";
    case Verdict::NegativeRationalResonant: return "#8e44ad";
    case Verdict::NodeNonResonant: return "#2471a3";
    case Verdict::NodePositiveResonant: return "#117a65";
    case Verdict::NodeReciprocalResonant: return "#b9770e";
    default: return "#555555";
  }
}

}  // namespace

Portrait make_portrait(const SingularOde& ode, const Window& w, const PortraitOptions& opts) {
  if (w.empty()) throw Error(ErrorKind::InvalidInput, "window is empty");
  if (opts.nx < 2 || opts.ny < 2) throw Error(ErrorKind::InvalidInput, "grid needs 2x2 nodes");
  Portrait out;
  out.window = w;
  const double hx = (w.x_max - w.x_min) / (opts.nx - 1);
  for (int k = 0; k < opts.ny; ++k) {
    for (int i = 0; i < opts.nx; ++i) {
      const PlanePoint q{lattice(w.x_min, w.x_max, i, opts.nx),
                         lattice(w.y_min, w.y_max, k, opts.ny)};
      const double d = ode.delta.eval(q);
      for (double p : opts.slices) {
        const JetPoint t{q.x, q.y, p};
        out.samples.push_back({t, field_eval(ode, t)});
        if (d == 0.0) continue;
        const double curvature = ode.m.eval(q, p) / d;
        if (!std::isfinite(curvature)) continue;
        out.arcs.push_back({q, p, curvature, opts.arc_fraction * hx / std::sqrt(1.0 + p * p)});
      }
    }
  }
  out.locus = locus_polyline(ode, w, opts.nx, opts.ny);

  TraceOptions topts = opts.trace;
  topts.extent = 0.5 * std::max(w.x_max - w.x_min, w.y_max - w.y_min);
  const PlanePoint center{0.5 * (w.x_min + w.x_max), 0.5 * (w.y_min + w.y_max)};
  std::vector<PlanePoint> points;
  for (PlanePoint q : locus_crossings(ode, w, opts.nx, opts.ny)) {
    if (!on_singular_locus(ode, q, topts.analysis.tol_locus)) continue;
    if (locus_regularity(ode, q, topts.analysis) != LocusRegularity::Regular) continue;
    points.push_back(q);
  }
  std::stable_sort(points.begin(), points.end(), [&](PlanePoint a, PlanePoint b) {
    return std::hypot(a.x - center.x, a.y - center.y) < std::hypot(b.x - center.x, b.y - center.y);
  });
  if (static_cast<int>(points.size()) > opts.max_points) points.resize(opts.max_points);
  for (PlanePoint q : points) add_pencils(ode, q, opts, topts, out.pencils);
  return out;
}

std::string portrait_svg(const Portrait& p) {
  const Window& w = p.window;
  const double size = 600.0, margin = 20.0;
  const double sx = (size - 2 * margin) / (w.x_max - w.x_min);
  const double sy = (size - 2 * margin) / (w.y_max - w.y_min);
  auto X = [&](double x) { return fmt(margin + (x - w.x_min) * sx); };
  auto Y = [&](double y) { return fmt(size - margin - (y - w.y_min) * sy); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  os << "<defs><clipPath id=\"win\"><rect x=\"" << fmt(margin) << "\" y=\"" << fmt(margin)
     << "\" width=\"" << fmt(size - 2 * margin) << "\" height=\"" << fmt(size - 2 * margin)
     << "\"/></clipPath></defs>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"600\" height=\"600\" fill=\"white\"/>\n";
  os << "<rect x=\"" << fmt(margin) << "\" y=\"" << fmt(margin) << "\" width=\""
     << fmt(size - 2 * margin) << "\" height=\"" << fmt(size - 2 * margin)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<g clip-path=\"url(#win)\">\n";

  os << "<g class=\"field\" stroke=\"#999999\" fill=\"none\" stroke-width=\"0.8\">\n";
  for (const Arc& a : p.arcs) {
    const double h = a.half_width, k = 0.5 * a.curvature;
    const double x0 = a.center.x, y0 = a.center.y;
    os << "<path class=\"arrow\" d=\"M" << X(x0 - h) << "," << Y(y0 - a.p * h + k * h * h)
       << " Q" << X(x0) << "," << Y(y0 - k * h * h) << " " << X(x0 + h) << ","
       << Y(y0 + a.p * h + k * h * h) << "\"/>\n";
  }
  os << "</g>\n";

  os << "<g class=\"locus\" stroke=\"#e67e22\" stroke-width=\"2\">\n";
  for (const auto& [a, b] : p.locus) {
    os << "<line x1=\"" << X(a.x) << "\" y1=\"" << Y(a.y) << "\" x2=\"" << X(b.x) << "\" y2=\""
       << Y(b.y) << "\"/>\n";
  }
  os << "</g>\n";

  for (const Pencil& pen : p.pencils) {
    os << "<g class=\"pencil\" data-verdict=\"" << to_string(pen.verdict) << "\" data-p=\""
       << pen.dir.to_string() << "\" stroke=\"" << verdict_color(pen.verdict)
       << "\" fill=\"none\" stroke-width=\"1.5\">\n";
    for (const Trajectory& t : pen.curves) {
      os << "<polyline points=\"";
      // Thin out dense samples; the figure does not need every step.
      const std::size_t stride = std::max<std::size_t>(1, t.samples.size() / 400);
      for (std::size_t i = 0; i < t.samples.size(); i += stride) {
        os << X(t.samples[i].x) << "," << Y(t.samples[i].y) << " ";
      }
      if (!t.samples.empty()) os << X(t.samples.back().x) << "," << Y(t.samples.back().y);
      os << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</g>\n";

  std::vector<PlanePoint> labelled;
  for (const Pencil& pen : p.pencils) {
    int row = 0;
    for (const PlanePoint& q : labelled) row += (q.x == pen.q.x && q.y == pen.q.y);
    labelled.push_back(pen.q);
    os << "<text x=\"" << X(pen.q.x) << "\" y=\"" << fmt(std::stod(Y(pen.q.y)) - 6.0 - 14.0 * row)
       << "\" font-size=\"11\" fill=\"" << verdict_color(pen.verdict) << "\">p="
       << pen.dir.to_string() << " " << to_string(pen.verdict) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string portrait_csv(const Portrait& p) {
  std::ostringstream os;
  const Window& w = p.window;
  os << "# portrait window=" << fmt17(w.x_min) << "," << fmt17(w.x_max) << "," << fmt17(w.y_min)
     << "," << fmt17(w.y_max) << " samples=" << p.samples.size() << " arrows=" << p.arcs.size()
     << " locus_segments=" << p.locus.size() << " pencils=" << p.pencils.size() << "\n";
  os << "kind,id,x,y,p,v1,v2,v3\n";
  for (const FieldSample& s : p.samples) {
    os << "field,," << fmt17(s.at.x) << "," << fmt17(s.at.y) << "," << fmt17(s.at.p) << ","
       << fmt17(s.value.dx) << "," << fmt17(s.value.dy) << "," << fmt17(s.value.dp) << "\n";
  }
  for (const Arc& a : p.arcs) {
    os << "arrow,," << fmt17(a.center.x) << "," << fmt17(a.center.y) << "," << fmt17(a.p) << ","
       << fmt17(a.curvature) << "," << fmt17(a.half_width) << ",\n";
  }
  for (std::size_t k = 0; k < p.locus.size(); ++k) {
    const auto& [a, b] = p.locus[k];
    os << "locus," << k << "," << fmt17(a.x) << "," << fmt17(a.y) << ",," << fmt17(b.x) << ","
       << fmt17(b.y) << ",\n";
  }
  for (std::size_t k = 0; k < p.pencils.size(); ++k) {
    const Pencil& pen = p.pencils[k];
    for (std::size_t c = 0; c < pen.curves.size(); ++c) {
      for (const Sample& s : pen.curves[c].samples) {
        os << "curve," << k << ":" << c << "," << fmt17(s.x) << "," << fmt17(s.y) << ","
           << fmt17(s.p) << "," << fmt17(s.t) << "," << to_string(pen.verdict) << ","
           << pen.dir.to_string() << "\n";
      }
    }
  }
  return os.str();
}

}  // namespace singode
