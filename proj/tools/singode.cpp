// singode: analyze / trace / portrait / verify for Delta(x,y) y'' = M(x,y,y').
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "singode/corpus.hpp"
#include "singode/error.hpp"
#include "singode/io.hpp"
#include "singode/portrait.hpp"
#include "singode/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace singode;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitNotTraceable = 4;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

PlanePoint to_point(const std::vector<double>& v) {
  if (v.size() != 2 || !std::isfinite(v[0]) || !std::isfinite(v[1])) {
    throw Error(ErrorKind::InvalidInput, "--point needs two finite numbers X,Y");
  }
  return {v[0], v[1]};
}

Window to_window(const std::vector<double>& v) {
  if (v.size() != 4) throw Error(ErrorKind::InvalidInput, "--window needs xmin,xmax,ymin,ymax");
  Window w{v[0], v[1], v[2], v[3]};
  if (w.empty()) throw Error(ErrorKind::InvalidInput, "window is empty");
  return w;
}

Direction to_direction(const std::string& s) {
  if (s == "inf" || s == "infinity") return Direction::infinite();
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !std::isfinite(p)) {
    throw Error(ErrorKind::InvalidInput, "--dir must be a finite slope or inf");
  }
  return Direction::from_slope(p);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path.string());
  out << text;
}

std::string trajectory_csv(const Trajectory& t, PlanePoint q, const Direction& dir) {
  std::string s = "# point=" + g17(q.x) + "," + g17(q.y) + " dir=" + dir.to_string() +
                  " side=" + std::string(to_string(t.meta.side)) + " offset=" + g17(t.meta.offset) +
                  " reason=" + std::string(to_string(t.meta.reason)) +
                  " chart=" + (t.meta.swapped_chart ? "swapped" : "plane") + "\n";
  s += "t,x,y,p\n";
  for (const Sample& v : t.samples) {
    s += g17(v.t) + "," + g17(v.x) + "," + g17(v.y) + "," + g17(v.p) + "\n";
  }
  return s;
}

struct Shared {
  AnalysisOptions analysis;
  std::string input;
};

void add_tolerances(CLI::App& app, AnalysisOptions& o) {
  app.add_option("--tol-locus", o.tol_locus, "|Delta| bound for the singular locus")->capture_default_str();
  app.add_option("--tol-gradient", o.tol_gradient, "|grad Delta| bound for degenerate points")->capture_default_str();
  app.add_option("--tol-mu", o.tol_mu, "bound below which mu_i counts as zero")->capture_default_str();
  app.add_option("--tol-root", o.tol_root, "root clustering radius")->capture_default_str();
  app.add_option("--tol-eigen", o.tol_eigen, "bound below which an eigenvalue counts as zero")->capture_default_str();
  app.add_option("--tol-rational", o.tol_rational, "relative tolerance of the rational test")->capture_default_str();
  app.add_option("--qmax", o.qmax, "denominator bound of the rational test")->capture_default_str();
  app.add_option("--samovol-k", o.samovol_k, "smoothness class in Samovol notes")->capture_default_str();
}

int run_analyze(const Shared& sh, const std::vector<double>& point, bool grid,
                const std::vector<double>& window, int nx, int ny) {
  const EquationInput in = load_equation(sh.input);
  json report;
  if (grid) {
    report = grid_report(in.ode, to_window(window), nx, ny, sh.analysis, in.metric);
  } else {
    report = point_report(in.ode, to_point(point), sh.analysis, in.metric);
  }
  report["equation"] = equation_to_json(in.ode);
  if (in.metric) report["metric"] = metric_to_json(*in.metric);
  std::cout << report.dump(2) << "\n";
  return 0;
}

int run_trace(const Shared& sh, const std::vector<double>& point, const std::string& dir_text,
              const std::string& side_text, const std::vector<double>& offsets,
              const std::string& out, TraceOptions topts) {
  const EquationInput in = load_equation(sh.input);
  const PlanePoint q = to_point(point);
  const Direction dir = to_direction(dir_text);
  if (side_text != "plus" && side_text != "minus") {
    throw Error(ErrorKind::InvalidInput, "--side must be plus or minus");
  }
  if (offsets.empty()) throw Error(ErrorKind::InvalidInput, "--offsets must not be empty");
  const Side side = side_text == "plus" ? Side::Plus : Side::Minus;
  topts.analysis = sh.analysis;

  const Classification cls = classify(in.ode, q, dir, sh.analysis);
  if (!is_traceable(cls.verdict)) {
    std::cerr << "singode: not traceable at this point and direction: " << to_string(cls.verdict)
              << "\n";
    return kExitNotTraceable;
  }
  const auto trajs = trace_from_singular(in.ode, q, dir, side, offsets, topts);

  const fs::path out_path(out);
  const fs::path dir_path = out_path.parent_path();
  const std::string stem = out_path.stem().string();
  json summary;
  summary["point"] = {q.x, q.y};
  summary["dir"] = dir.to_string();
  summary["side"] = side_text;
  summary["verdict"] = to_string(cls.verdict);
  summary["lambda"] = cls.eigen ? json(cls.eigen->lambda) : json(nullptr);
  json files = json::array();
  for (std::size_t k = 0; k < trajs.size(); ++k) {
    const std::string name = stem + "_" + std::to_string(k) + ".csv";
    write_file(dir_path / name, trajectory_csv(trajs[k], q, dir));
    files.push_back({{"file", name},
                     {"offset", trajs[k].meta.offset},
                     {"samples", trajs[k].samples.size()},
                     {"reason", to_string(trajs[k].meta.reason)}});
  }
  summary["trajectories"] = std::move(files);

  json est;
  try {
    const FamilyEstimate e = estimate_exponent(trajs, q, dir);
    est["exponent_hat"] = e.exponent_hat;
    est["exponent_fit_residual"] = e.fit_residual;
  } catch (const Error& err) {
    est["exponent_hat"] = nullptr;
    est["exponent_note"] = err.what();
  }
  if (cls.family_form && cls.family_form->kind == FamilyKind::PowerLog) {
    const int n = static_cast<int>(std::lround(cls.family_form->exponent));
    try {
      const FamilyEstimate e = detect_log_term(trajs, q, dir, n);
      est["log_coefficient_hat"] = e.log_coefficient_hat;
      est["intercept_hat"] = e.intercept_hat;
    } catch (const Error& err) {
      est["log_coefficient_hat"] = nullptr;
      est["log_note"] = err.what();
    }
  } else {
    est["log_coefficient_hat"] = nullptr;
  }
  summary["estimate"] = std::move(est);
  summary["options"] = options_to_json(sh.analysis);
  summary["options"]["seed_distance"] = topts.seed_distance;
  summary["options"]["extent"] = topts.extent;
  summary["options"]["max_step_factor"] = topts.max_step_factor;
  summary["options"]["abs_tol"] = topts.integrator.abs_tol;
  summary["options"]["rel_tol"] = topts.integrator.rel_tol;
  summary["options"]["max_steps"] = topts.integrator.max_steps;
  write_file(dir_path / (stem + "_summary.json"), summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int run_portrait(const Shared& sh, const std::vector<double>& window, const std::string& out,
                 PortraitOptions popts) {
  const EquationInput in = load_equation(sh.input);
  const Window w = to_window(window);
  const std::string ext = fs::path(out).extension().string();
  if (ext != ".svg" && ext != ".csv") {
    throw Error(ErrorKind::InvalidInput, "--out must end in .svg or .csv");
  }
  popts.trace.analysis = sh.analysis;
  const Portrait p = make_portrait(in.ode, w, popts);
  write_file(out, ext == ".svg" ? portrait_svg(p) : portrait_csv(p));
  std::cout << "arrows=" << p.arcs.size() << " locus_segments=" << p.locus.size()
            << " pencils=" << p.pencils.size() << "\n";
  return 0;
}

int run_verify(const Shared& sh, const std::string& example) {
  std::vector<CorpusEntry> entries;
  if (example.empty()) {
    entries = corpus_list();
  } else if (auto e = corpus_find(example)) {
    entries.push_back(std::move(*e));
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown example id: " + example);
  }
  json summary;
  summary["checks"] = json::array();
  int failed = 0;
  for (const CorpusEntry& e : entries) {
    for (const CheckResult& r : verify_entry(e, sh.analysis)) {
      std::printf("%-14s %-36s measured=%-24s threshold=%-10s %s\n", r.entry.c_str(),
                  r.check.c_str(), g17(r.measured).c_str(), g17(r.threshold).c_str(),
                  r.passed ? "PASS" : "FAIL");
      failed += !r.passed;
      summary["checks"].push_back({{"entry", r.entry},
                                   {"check", r.check},
                                   {"measured", std::isfinite(r.measured) ? json(r.measured) : json(nullptr)},
                                   {"threshold", r.threshold},
                                   {"passed", r.passed}});
    }
  }
  summary["failed"] = failed;
  summary["total"] = summary["checks"].size();
  summary["options"] = options_to_json(sh.analysis);
  std::printf("%s\n", summary.dump().c_str());
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Singular points of Delta(x,y) y'' = M(x,y,y') with M cubic in y'"};
  app.require_subcommand(1);
  Shared sh;

  auto* analyze = app.add_subcommand("analyze", "classify a point, or map a grid");
  std::vector<double> point;
  bool grid = false;
  std::vector<double> window;
  int nx = 21, ny = 21;
  analyze->add_option("--input", sh.input, "equation file (JSON)")->required();
  analyze->add_option("--point", point, "X,Y")->delimiter(',')->expected(2);
  analyze->add_flag("--grid", grid, "map verdicts over a lattice and report locus crossings");
  analyze->add_option("--window", window, "xmin,xmax,ymin,ymax for --grid")->delimiter(',')->expected(4);
  analyze->add_option("--nx", nx, "lattice nodes in x")->capture_default_str();
  analyze->add_option("--ny", ny, "lattice nodes in y")->capture_default_str();
  add_tolerances(*analyze, sh.analysis);

  auto* trace = app.add_subcommand("trace", "integrate solutions entering a singular point");
  std::string dir_text, side_text = "plus", out;
  std::vector<double> offsets;
  TraceOptions topts;
  trace->add_option("--input", sh.input, "equation file (JSON)")->required();
  trace->add_option("--point", point, "X,Y")->delimiter(',')->expected(2)->required();
  trace->add_option("--dir", dir_text, "admissible slope P, or inf")->required();
  trace->add_option("--side", side_text, "plus|minus: sign of Delta on the traced side")->capture_default_str();
  trace->add_option("--offsets", offsets, "comma-separated seed offsets")->delimiter(',')->required();
  trace->add_option("--out", out, "FILE.csv; writes FILE_<k>.csv and FILE_summary.json")->required();
  trace->add_option("--seed-distance", topts.seed_distance, "x-distance of node seeds")->capture_default_str();
  trace->add_option("--extent", topts.extent, "half-width of the tracing box")->capture_default_str();
  trace->add_option("--max-step-factor", topts.max_step_factor, "max step times max|lambda|")->capture_default_str();
  add_tolerances(*trace, sh.analysis);

  auto* portrait = app.add_subcommand("portrait", "direction field, locus and traced pencils");
  PortraitOptions popts;
  portrait->add_option("--input", sh.input, "equation file (JSON)")->required();
  portrait->add_option("--window", window, "xmin,xmax,ymin,ymax")->delimiter(',')->expected(4)->required();
  portrait->add_option("--out", out, "FILE.svg or FILE.csv")->required();
  portrait->add_option("--nx", popts.nx, "lattice nodes in x")->capture_default_str();
  portrait->add_option("--ny", popts.ny, "lattice nodes in y")->capture_default_str();
  portrait->add_option("--max-points", popts.max_points, "singular points with pencils")->capture_default_str();
  portrait->add_option("--pencil-size", popts.pencil_size, "curves per node side")->capture_default_str();
  add_tolerances(*portrait, sh.analysis);

  auto* verify = app.add_subcommand("verify", "check the built-in examples");
  std::string example;
  verify->add_option("--example", example, "entry id; all entries when omitted");
  add_tolerances(*verify, sh.analysis);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    if (*analyze) {
      if (!grid && point.empty()) throw Error(ErrorKind::InvalidInput, "analyze needs --point or --grid");
      if (grid && window.empty()) throw Error(ErrorKind::InvalidInput, "--grid needs --window");
      return run_analyze(sh, point, grid, window, nx, ny);
    }
    if (*trace) return run_trace(sh, point, dir_text, side_text, offsets, out, topts);
    if (*portrait) return run_portrait(sh, window, out, popts);
    if (*verify) return run_verify(sh, example);
  } catch (const Error& e) {
    std::cerr << "singode: " << e.what() << "\n";
    const bool input_fault = e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::InvalidInput;
    return input_fault ? kExitParse : kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "singode: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
