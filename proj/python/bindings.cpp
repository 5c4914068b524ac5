#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "singode/corpus.hpp"
#include "singode/io.hpp"
#include "singode/lifted_field.hpp"
#include "singode/report.hpp"

namespace py = pybind11;
using namespace singode;

namespace {

Direction direction_arg(const py::object& p) {
  if (py::isinstance<py::str>(p)) {
    const auto s = p.cast<std::string>();
    if (s == "inf") return Direction::infinite();
    throw Error(ErrorKind::InvalidInput, "direction must be a number or 'inf'");
  }
  return Direction::from_slope(p.cast<double>());
}

Side side_arg(const std::string& s) {
  if (s == "plus") return Side::Plus;
  if (s == "minus") return Side::Minus;
  throw Error(ErrorKind::InvalidInput, "side must be 'plus' or 'minus'");
}

}  // namespace

PYBIND11_MODULE(_singode, m) {
  m.doc() = "Singular points of Delta(x,y) y'' = M(x,y,y')";

  py::register_exception<Error>(m, "SingodeError");

  py::class_<AnalysisOptions>(m, "AnalysisOptions")
      .def(py::init<>())
      .def_readwrite("tol_locus", &AnalysisOptions::tol_locus)
      .def_readwrite("tol_gradient", &AnalysisOptions::tol_gradient)
      .def_readwrite("tol_mu", &AnalysisOptions::tol_mu)
      .def_readwrite("tol_root", &AnalysisOptions::tol_root)
      .def_readwrite("tol_eigen", &AnalysisOptions::tol_eigen)
      .def_readwrite("tol_rational", &AnalysisOptions::tol_rational)
      .def_readwrite("qmax", &AnalysisOptions::qmax)
      .def_readwrite("samovol_k", &AnalysisOptions::samovol_k);

  py::class_<EquationInput>(m, "Equation")
      .def_static("from_json", &parse_equation_text, py::arg("text"))
      .def_static("load", [](const std::string& path) { return load_equation(path); }, py::arg("path"))
      .def_property_readonly("is_geodesic", [](const EquationInput& e) { return e.metric.has_value(); })
      .def("to_json", [](const EquationInput& e) { return equation_to_json(e.ode).dump(); })
      .def("delta", [](const EquationInput& e, double x, double y) { return e.ode.delta.eval(x, y); })
      .def("rhs", [](const EquationInput& e, double x, double y, double p) {
        return e.ode.m.eval({x, y}, p);
      });

  py::class_<Sample>(m, "Sample")
      .def_readonly("t", &Sample::t)
      .def_readonly("x", &Sample::x)
      .def_readonly("y", &Sample::y)
      .def_readonly("p", &Sample::p);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("samples", &Trajectory::samples)
      .def_property_readonly("offset", [](const Trajectory& t) { return t.meta.offset; })
      .def_property_readonly("swapped_chart", [](const Trajectory& t) { return t.meta.swapped_chart; })
      .def_property_readonly("reason", [](const Trajectory& t) {
        return std::string(to_string(t.meta.reason));
      })
      .def("__len__", [](const Trajectory& t) { return t.samples.size(); });

  m.def("analyze_json",
        [](const EquationInput& e, double x, double y, const AnalysisOptions& o) {
          return point_report(e.ode, {x, y}, o, e.metric).dump();
        },
        py::arg("equation"), py::arg("x"), py::arg("y"), py::arg("options") = AnalysisOptions{});

  m.def("spectrum",
        [](const EquationInput& e, double x, double y, double p) {
          return spectrum_at_singular(e.ode, {x, y, p}).eigenvalues;
        },
        py::arg("equation"), py::arg("x"), py::arg("y"), py::arg("p"));

  m.def("trace",
        [](const EquationInput& e, double x, double y, const py::object& dir,
           const std::string& side, const std::vector<double>& offsets, double extent) {
          TraceOptions t;
          t.extent = extent;
          return trace_from_singular(e.ode, {x, y}, direction_arg(dir), side_arg(side), offsets, t);
        },
        py::arg("equation"), py::arg("x"), py::arg("y"), py::arg("dir"), py::arg("side"),
        py::arg("offsets"), py::arg("extent") = 1.0);

  m.def("estimate_exponent",
        [](const std::vector<Trajectory>& trajs, double x, double y, const py::object& dir) {
          return estimate_exponent(trajs, {x, y}, direction_arg(dir)).exponent_hat;
        },
        py::arg("trajectories"), py::arg("x"), py::arg("y"), py::arg("dir"));

  m.def("detect_log_term",
        [](const std::vector<Trajectory>& trajs, double x, double y, const py::object& dir, int n) {
          const FamilyEstimate f = detect_log_term(trajs, {x, y}, direction_arg(dir), n);
          return py::make_tuple(f.log_coefficient_hat, f.intercept_hat);
        },
        py::arg("trajectories"), py::arg("x"), py::arg("y"), py::arg("dir"), py::arg("n"));

  m.def("oscillation_detect",
        [](const Trajectory& t, double x, double y) {
          return std::string(to_string(oscillation_detect(t, {x, y}).verdict));
        },
        py::arg("trajectory"), py::arg("x"), py::arg("y"));

  m.def("resonance_find",
        [](double l1, double l2, int max_order, double tol) -> py::object {
          if (auto r = resonance_find(l1, l2, max_order, tol)) return py::make_tuple(r->p, r->q);
          return py::none();
        },
        py::arg("lambda1"), py::arg("lambda2"), py::arg("max_order") = 64, py::arg("tol") = 1e-9);

  m.def("samovol_order", &samovol_order, py::arg("k"), py::arg("lambda1"), py::arg("lambda2"));

  m.def("best_rational",
        [](double x, std::int64_t max_den) {
          const Fraction f = best_rational(x, max_den);
          return py::make_tuple(f.num, f.den);
        },
        py::arg("x"), py::arg("max_den") = 64);

  m.def("corpus_ids", [] {
    std::vector<std::string> ids;
    for (const CorpusEntry& e : corpus_list()) ids.push_back(e.id);
    return ids;
  });

  m.def("verify",
        [](const std::string& id) {
          auto e = corpus_find(id);
          if (!e) throw Error(ErrorKind::InvalidInput, "unknown example id: " + id);
          py::list out;
          for (const CheckResult& r : verify_entry(*e)) {
            py::dict d;
            d["check"] = r.check;
            d["measured"] = r.measured;
            d["threshold"] = r.threshold;
            d["passed"] = r.passed;
            out.append(d);
          }
          return out;
        },
        py::arg("id"));
}
