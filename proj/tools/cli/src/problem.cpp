#include "oscint_cli/problem.hpp"

#include "oscint/error.hpp"
#include "oscint/sep_vars.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace oscint::cli {

namespace {

const std::set<std::string> kKnownFields = {"kind",       "dimension", "variables", "truncation", "phase",
                                            "logdensity", "potential", "amplitudes", "products",  "directions",
                                            "degree",     "l",         "g_degree",  "hs",         "box"};

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ProblemError(path, "expected an integer");
  return j.get<int>();
}

double get_double(const json& j, const std::string& path) {
  if (!j.is_number()) throw ProblemError(path, "expected a number");
  return j.get<double>();
}

mpq_class get_rational(const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    if (j.is_string()) return GQ::parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ProblemError(path, std::string("not an exact rational: ") + e.what());
  }
  throw ProblemError(path, "expected a rational string such as \"1/2\"");
}

GQ get_coeff(const json& j, const std::string& path) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      if (k != "re" && k != "im") throw ProblemError(at(path, k), "unknown field");
    mpq_class re = j.contains("re") ? get_rational(j["re"], at(path, "re")) : mpq_class(0);
    mpq_class im = j.contains("im") ? get_rational(j["im"], at(path, "im")) : mpq_class(0);
    return GQ(re, im);
  }
  if (j.is_string()) {
    try {
      return GQ::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      throw ProblemError(path, std::string("not an exact Gaussian rational: ") + e.what());
    }
  }
  return GQ(get_rational(j, path));
}

JetSpec get_jet(const json& j, const std::string& path, std::size_t nvars) {
  if (!j.is_array()) throw ProblemError(path, "expected a list of terms");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& t = j[i];
    std::string tp = at(path, i);
    if (!t.is_object()) throw ProblemError(tp, "expected a term object");
    for (const auto& [k, v] : t.items())
      if (k != "exponents" && k != "nu" && k != "coeff") throw ProblemError(at(tp, k), "unknown field");
    if (!t.contains("exponents")) throw ProblemError(at(tp, "exponents"), "missing");
    if (!t.contains("coeff")) throw ProblemError(at(tp, "coeff"), "missing");
    const json& e = t["exponents"];
    if (!e.is_array() || e.size() != nvars)
      throw ProblemError(at(tp, "exponents"), "expected " + std::to_string(nvars) + " exponents");
    Term term;
    for (std::size_t k = 0; k < e.size(); ++k) {
      int v = get_int(e[k], at(at(tp, "exponents"), k));
      if (v < 0) throw ProblemError(at(at(tp, "exponents"), k), "exponents must be non-negative");
      term.exponents.push_back(v);
    }
    term.nu = t.contains("nu") ? get_int(t["nu"], at(tp, "nu")) : 0;
    term.coeff = get_coeff(t["coeff"], at(tp, "coeff"));
    terms.push_back(std::move(term));
  }
  return JetSpec::normalized(std::move(terms));
}

std::optional<int> get_positive(const json& j, const std::string& key, const std::string& path, const char* what) {
  if (!j.contains(key)) return std::nullopt;
  int v = get_int(j[key], at(path, key));
  if (v <= 0) throw ProblemError(at(path, key), what);
  return v;
}

json render_coeff(const GQ& c) {
  json out;
  out["re"] = rational_to_string(c.re());
  out["im"] = rational_to_string(c.im());
  return out;
}

json render_jet(const JetSpec& s) {
  json out = json::array();
  for (const auto& t : s.terms) {
    json term;
    term["exponents"] = t.exponents;
    term["nu"] = t.nu;
    term["coeff"] = render_coeff(t.coeff);
    out.push_back(std::move(term));
  }
  return out;
}

}  // namespace

const char* to_string(Kind k) {
  switch (k) {
    case Kind::Foi: return "foi";
    case Kind::Star: return "star";
    case Kind::Kfoi: return "kfoi";
    case Kind::Laplace: return "laplace";
  }
  return "?";
}

JetSpec JetSpec::normalized(std::vector<Term> terms) {
  std::map<std::pair<int, Exponents>, GQ> merged;
  for (auto& t : terms) merged[{t.nu, t.exponents}] += t.coeff;
  JetSpec out;
  for (auto& [k, c] : merged)
    if (!c.is_zero()) out.terms.push_back({k.second, k.first, c});
  return out;
}

WeightedJet JetSpec::to_jet(const VarList& vars, int weight) const {
  WeightedJet j(vars, weight);
  for (const auto& t : terms) {
    if (t.exponents.size() != vars.size()) throw ProblemError("", "term has the wrong number of exponents");
    int w = std::accumulate(t.exponents.begin(), t.exponents.end(), 0) + 2 * t.nu;
    if (w <= weight) j.add_term(t.exponents, t.nu, t.coeff);
  }
  return j;
}

int JetSpec::max_degree() const {
  int d = 0;
  for (const auto& t : terms) d = std::max(d, std::accumulate(t.exponents.begin(), t.exponents.end(), 0));
  return d;
}

VarList default_variables(Kind k, std::size_t dimension) {
  if (k == Kind::Star || k == Kind::Kfoi) return sep::chart_variables(dimension);
  if (dimension == 1) return {"x"};
  VarList v;
  for (std::size_t i = 1; i <= dimension; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

Problem parse_problem(const json& j) {
  if (!j.is_object()) throw ProblemError("", "problem must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!kKnownFields.count(k)) throw ProblemError(k, "unknown field");
  Problem p;
  if (!j.contains("kind") || !j["kind"].is_string()) throw ProblemError("kind", "expected one of foi, star, kfoi, laplace");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "foi") p.kind = Kind::Foi;
  else if (kind == "star") p.kind = Kind::Star;
  else if (kind == "kfoi") p.kind = Kind::Kfoi;
  else if (kind == "laplace") p.kind = Kind::Laplace;
  else throw ProblemError("kind", "expected one of foi, star, kfoi, laplace");

  if (!j.contains("dimension")) throw ProblemError("dimension", "missing");
  int dim = get_int(j["dimension"], "dimension");
  if (dim <= 0) throw ProblemError("dimension", "dimension must be positive");
  p.dimension = static_cast<std::size_t>(dim);
  const bool complex = p.kind == Kind::Star || p.kind == Kind::Kfoi;
  const std::size_t nvars = complex ? 2 * p.dimension : p.dimension;

  if (j.contains("variables")) {
    const json& v = j["variables"];
    if (!v.is_array() || v.size() != nvars)
      throw ProblemError("variables", "expected " + std::to_string(nvars) + " variable names");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string() || v[i].get<std::string>().empty()) throw ProblemError(at("variables", i), "expected a name");
      p.variables.push_back(v[i].get<std::string>());
    }
    if (std::set<std::string>(p.variables.begin(), p.variables.end()).size() != nvars)
      throw ProblemError("variables", "variable names must be distinct");
  } else {
    p.variables = default_variables(p.kind, p.dimension);
  }

  if (j.contains("truncation")) {
    const json& t = j["truncation"];
    if (!t.is_object()) throw ProblemError("truncation", "expected an object");
    for (const auto& [k, v] : t.items())
      if (k != "order" && k != "weight") throw ProblemError(at("truncation", k), "unknown field");
    p.truncation.order = get_positive(t, "order", "truncation", "truncation must be positive");
    if (t.contains("weight") && !(t["weight"].is_string() && t["weight"].get<std::string>() == "auto"))
      p.truncation.weight = get_positive(t, "weight", "truncation", "truncation must be positive");
  }

  if (j.contains("phase")) p.phase = get_jet(j["phase"], "phase", nvars);
  if (j.contains("logdensity")) p.logdensity = get_jet(j["logdensity"], "logdensity", nvars);
  if (j.contains("potential")) p.potential = get_jet(j["potential"], "potential", nvars);
  if (j.contains("amplitudes")) {
    const json& a = j["amplitudes"];
    if (!a.is_array()) throw ProblemError("amplitudes", "expected a list of jets");
    for (std::size_t i = 0; i < a.size(); ++i) p.amplitudes.push_back(get_jet(a[i], at("amplitudes", i), nvars));
  }
  if (j.contains("products")) {
    const json& a = j["products"];
    if (!a.is_array()) throw ProblemError("products", "expected a list of [f, g] pairs");
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_array() || a[i].size() != 2) throw ProblemError(at("products", i), "expected a pair [f, g]");
      p.products.emplace_back(get_jet(a[i][0], at(at("products", i), 0), nvars),
                              get_jet(a[i][1], at(at("products", i), 1), nvars));
    }
  }
  if (j.contains("directions")) {
    const json& d = j["directions"];
    if (!d.is_array()) throw ProblemError("directions", "expected a list of variable indices");
    for (std::size_t i = 0; i < d.size(); ++i) {
      int v = get_int(d[i], at("directions", i));
      if (v < 0 || static_cast<std::size_t>(v) >= nvars) throw ProblemError(at("directions", i), "index out of range");
      p.directions.push_back(v);
    }
  }
  if (j.contains("degree")) {
    int v = get_int(j["degree"], "degree");
    if (v < 0) throw ProblemError("degree", "degree must be non-negative");
    p.degree = v;
  }
  if (j.contains("g_degree")) {
    int v = get_int(j["g_degree"], "g_degree");
    if (v < 0) throw ProblemError("g_degree", "degree must be non-negative");
    p.g_degree = v;
  }
  p.l = get_positive(j, "l", "", "l must be positive");
  if (j.contains("hs")) {
    const json& h = j["hs"];
    if (!h.is_array()) throw ProblemError("hs", "expected a list of step sizes");
    for (std::size_t i = 0; i < h.size(); ++i) {
      double v = get_double(h[i], at("hs", i));
      if (!(v > 0)) throw ProblemError(at("hs", i), "h must be positive");
      p.hs.push_back(v);
    }
  }
  if (j.contains("box")) {
    double b = get_double(j["box"], "box");
    if (!(b > 0)) throw ProblemError("box", "box half-width must be positive");
    p.box = b;
  }

  switch (p.kind) {
    case Kind::Foi:
    case Kind::Laplace:
      if (!p.phase) throw ProblemError("phase", "missing");
      break;
    case Kind::Star:
    case Kind::Kfoi:
      if (!p.potential) throw ProblemError("potential", "missing");
      break;
  }
  return p;
}

Problem parse_problem_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ProblemError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_problem(j);
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProblemError("", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_text(ss.str());
}

json render_problem(const Problem& p) {
  json out;
  out["kind"] = to_string(p.kind);
  out["dimension"] = p.dimension;
  out["variables"] = p.variables;
  json t;
  if (p.truncation.order) t["order"] = *p.truncation.order;
  if (p.truncation.weight) t["weight"] = *p.truncation.weight;
  else t["weight"] = "auto";
  out["truncation"] = t;
  if (p.phase) out["phase"] = render_jet(*p.phase);
  if (p.logdensity) out["logdensity"] = render_jet(*p.logdensity);
  if (p.potential) out["potential"] = render_jet(*p.potential);
  if (!p.amplitudes.empty()) {
    json a = json::array();
    for (const auto& s : p.amplitudes) a.push_back(render_jet(s));
    out["amplitudes"] = a;
  }
  if (!p.products.empty()) {
    json a = json::array();
    for (const auto& [f, g] : p.products) a.push_back(json::array({render_jet(f), render_jet(g)}));
    out["products"] = a;
  }
  if (!p.directions.empty()) out["directions"] = p.directions;
  if (p.degree) out["degree"] = *p.degree;
  if (p.l) out["l"] = *p.l;
  if (p.g_degree) out["g_degree"] = *p.g_degree;
  if (!p.hs.empty()) out["hs"] = p.hs;
  if (p.box) out["box"] = *p.box;
  return out;
}

}  // namespace oscint::cli
