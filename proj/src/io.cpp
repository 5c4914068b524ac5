#include "singode/io.hpp"

#include <fstream>
#include <sstream>

#include "singode/error.hpp"

namespace singode {

using nlohmann::json;

Poly2 poly_from_json(const json& terms) {
  if (!terms.is_array()) {
    throw Error(ErrorKind::ParseError, "polynomial must be an array of [i,j,coef]");
  }
  std::vector<Term> out;
  for (const json& t : terms) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() ||
        !t[1].is_number_integer() || !t[2].is_number()) {
      throw Error(ErrorKind::ParseError, "term must be [i,j,coef] with integer exponents: " + t.dump());
    }
    const auto i = t[0].get<long long>();
    const auto j = t[1].get<long long>();
    if (i < 0 || j < 0 || i > 64 || j > 64) {
      throw Error(ErrorKind::ParseError, "exponents must lie in [0, 64]: " + t.dump());
    }
    out.push_back({static_cast<int>(i), static_cast<int>(j), t[2].get<double>()});
  }
  try {
    return Poly2(out);
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

json poly_to_json(const Poly2& f) {
  json arr = json::array();
  for (const Term& t : f.term_list()) arr.push_back({t.i, t.j, t.coef});
  return arr;
}

EquationInput parse_equation(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "equation file must be a JSON object");
  const bool has_metric = doc.contains("metric");
  const bool has_direct = doc.contains("delta") || doc.contains("mu");
  if (has_metric == has_direct) {
    throw Error(ErrorKind::ParseError, "expected exactly one of {delta, mu} or {metric}");
  }

  EquationInput in;
  if (has_metric) {
    const json& m = doc.at("metric");
    if (!m.is_object() || !m.contains("a") || !m.contains("b") || !m.contains("c")) {
      throw Error(ErrorKind::ParseError, "metric needs fields a, b, c");
    }
    Metric g{poly_from_json(m.at("a")), poly_from_json(m.at("b")), poly_from_json(m.at("c"))};
    in.ode = geodesic_from_metric(g);
    in.metric = std::move(g);
    return in;
  }

  if (!doc.contains("delta") || !doc.contains("mu")) {
    throw Error(ErrorKind::ParseError, "direct form needs both delta and mu");
  }
  const json& mu = doc.at("mu");
  if (!mu.is_array() || mu.size() != 4) {
    throw Error(ErrorKind::ParseError, "mu must list exactly four polynomials");
  }
  in.ode.delta = poly_from_json(doc.at("delta"));
  for (std::size_t k = 0; k < 4; ++k) in.ode.m.mu[k] = poly_from_json(mu[k]);
  return in;
}

EquationInput parse_equation_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return parse_equation(doc);
}

EquationInput load_equation(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_equation_text(ss.str());
}

json equation_to_json(const SingularOde& ode) {
  json mu = json::array();
  for (const Poly2& f : ode.m.mu) mu.push_back(poly_to_json(f));
  return {{"delta", poly_to_json(ode.delta)}, {"mu", mu}};
}

json metric_to_json(const Metric& g) {
  return {{"metric", {{"a", poly_to_json(g.a)}, {"b", poly_to_json(g.b)}, {"c", poly_to_json(g.c)}}}};
}

}  // namespace singode
