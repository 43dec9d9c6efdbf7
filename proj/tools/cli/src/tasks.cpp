#include "oscint_cli/tasks.hpp"

#include "oscint/error.hpp"
#include "oscint/foi.hpp"
#include "oscint/kfoi.hpp"
#include "oscint/oracles.hpp"
#include "oscint/sep_vars.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

namespace oscint::cli {

namespace {

struct Context {
  const Problem& p;
  int order;
  int weight;
  Report& report;
};

// Runs f, converting library errors into TaskError tagged with `op`.
template <class F>
auto guarded(const char* op, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ProblemError&) {
    throw;
  } catch (const std::exception& e) {
    throw TaskError(op, e.what());
  }
}

std::string mono_name(const VarList& vars, const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    out += (out.empty() ? "" : "*") + vars[i] + (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
  }
  return out.empty() ? "1" : out;
}

std::string one_line(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  for (std::size_t pos; (pos = s.find('\n')) != std::string::npos;) s.replace(pos, 1, " | ");
  return s;
}

std::string body(const WeightedJet& j) {
  std::string s = j.to_string();
  auto pos = s.rfind(" + O(");
  return pos == std::string::npos ? s : s.substr(0, pos);
}

// A jet residual passes when every stored term vanishes and the jet is known through weight w.
void jet_residual(Report& r, const std::string& name, const WeightedJet& j, int w) {
  r.residual(name, j.to_string(), j.vanishes_through(w));
}

void scalar_residual(Report& r, const std::string& name, const LaurentScalar& s, int order) {
  r.residual(name, s.to_string(), s.vanishes_through(order));
}

int max_degree(const std::vector<JetSpec>& specs) {
  int d = 0;
  for (const auto& s : specs) d = std::max(d, s.max_degree());
  return d;
}

std::vector<WeightedJet> amplitudes_or_monomials(const Context& c, int weight, int default_degree) {
  std::vector<WeightedJet> out;
  if (!c.p.amplitudes.empty()) {
    for (const auto& a : c.p.amplitudes) out.push_back(a.to_jet(c.p.variables, weight));
    return out;
  }
  for (const auto& e : foi::monomials_up_to(c.p.variables.size(), c.p.degree.value_or(default_degree)))
    out.push_back(WeightedJet::monomial(c.p.variables, e, 0, GQ(1), weight));
  return out;
}

foi::PhasePair foi_pair(const Context& c) {
  WeightedJet phase = c.p.phase->to_jet(c.p.variables, c.weight);
  WeightedJet u = c.p.logdensity ? c.p.logdensity->to_jet(c.p.variables, c.weight) : phase.zero_like();
  return guarded("phase_pair", [&] { return foi::PhasePair(phase, u); });
}

void run_construct(const Context& c) {
  foi::PhasePair pair = foi_pair(c);
  PointDistribution lambda = guarded("construct_foi", [&] { return foi::construct_foi(pair, c.order); });
  c.report.result("lambda", one_line(lambda.to_string()));
  const int aw = std::max(c.weight, lambda.required_weight(c.order));
  std::vector<WeightedJet> amps;
  for (const auto& a : c.p.amplitudes) amps.push_back(a.to_jet(c.p.variables, aw + a.max_degree()));
  if (amps.empty()) amps.push_back(WeightedJet::constant(c.p.variables, GQ(1), aw));
  for (const auto& f : amps)
    c.report.result("Lambda(" + body(f) + ")", guarded("dist_apply", [&] { return lambda.apply(f, c.order); }).to_string());
  PointDistribution delta = PointDistribution::delta(c.p.variables, 0);
  c.report.residual("leading_row_delta", one_line(lambda.truncated(0).to_string()), lambda.truncated(0) == delta);
}

void run_check_foi(const Context& c) {
  foi::PhasePair pair = foi_pair(c);
  // d(phi) carries nu^-1, so the residual through nu^R needs row R + 1
  PointDistribution lambda = guarded("construct_foi", [&] { return foi::construct_foi(pair, c.order + 1); });
  const std::size_t n = c.p.variables.size();
  std::vector<int> dirs = c.p.directions;
  if (dirs.empty())
    for (std::size_t i = 0; i < n; ++i) dirs.push_back(static_cast<int>(i));
  const int aw = std::max(c.weight, lambda.required_weight(c.order)) + 2;
  std::vector<WeightedJet> amps = amplitudes_or_monomials(c, aw + 8, 4);

  PointDistribution delta = PointDistribution::delta(c.p.variables, 0);
  c.report.residual("leading_row_delta", one_line(lambda.truncated(0).to_string()), lambda.truncated(0) == delta);
  for (const auto& f : amps)
    for (int i : dirs) {
      LaurentScalar v = guarded("ibp_residual", [&] { return foi::ibp_residual(lambda, pair, static_cast<std::size_t>(i), f); });
      scalar_residual(c.report, "ibp[d_" + c.p.variables[i] + "](" + body(f) + ")", v, c.order);
    }

  // independent oracle: Gaussian expectation of e^{nu^-1 chi + phi~} f by pairings
  foi::PhaseSplit split = guarded("phase_split", [&] { return foi::phase_split(pair); });
  oracles::WickCovariance cov = oracles::WickCovariance::from_hessian(split.hessian.h);
  WeightedJet pert = split.chi.nu_shift(-1) + split.phi_tilde;
  for (const auto& f : amps) {
    if (pert.weight() < 2 * c.order || f.weight() < 2 * c.order) break;
    LaurentScalar lhs = guarded("dist_apply", [&] { return lambda.apply(f, c.order); });
    LaurentScalar rhs = guarded("wick_expectation", [&] { return oracles::wick_expectation(cov, pert, f, c.order); });
    scalar_residual(c.report, "wick(" + body(f) + ")", lhs - rhs, c.order);
  }
  c.report.result("hessian", split.hessian.h.to_string());
  c.report.result("strong_defect", guarded("strong_defect", [&] { return foi::strong_defect(lambda, pair); }).to_string());
  if (c.order >= 1) {
    foi::Lambda1Report l1 = guarded("lambda1_check", [&] { return foi::lambda1_check(lambda, pair); });
    c.report.residual("lambda1.A", l1.A.to_string(), l1.A_matches);
    c.report.residual("lambda1.B_full", l1.full_formula_holds ? "holds" : "differs", l1.full_formula_holds);
    std::string corr;
    for (const auto& x : l1.correction) corr += (corr.empty() ? "" : ", ") + x.to_string();
    c.report.result("lambda1.B_correction", "[" + corr + "]");
  }
}

sep::StarProduct star_product(const Context& c) {
  WeightedJet phi = c.p.potential->to_jet(c.p.variables, c.weight);
  return guarded("kahler_potential", [&] { return sep::StarProduct(sep::KahlerPotential(phi)); });
}

void run_star(const Context& c) {
  sep::StarProduct sp = star_product(c);
  const VarList& v = c.p.variables;
  const int check = 2 * c.order;
  for (const auto& [fs, gs] : c.p.products) {
    WeightedJet f = fs.to_jet(v, c.weight), g = gs.to_jet(v, c.weight);
    WeightedJet fg = guarded("star", [&] { return sp.star(f, g); });
    c.report.result("(" + body(f) + ")*(" + body(g) + ")", fg.to_string());
  }
  const int d = c.p.degree.value_or(2);
  std::vector<Exponents> monos = foi::monomials_up_to(v.size(), d);
  auto mono = [&](const Exponents& e) { return WeightedJet::monomial(v, e, 0, GQ(1), c.weight); };
  for (const auto& a : monos)
    for (const auto& b : monos)
      for (const auto& e : monos) {
        WeightedJet x = mono(a), y = mono(b), z = mono(e);
        WeightedJet r = guarded("star", [&] { return sp.star(sp.star(x, y), z) - sp.star(x, sp.star(y, z)); });
        jet_residual(c.report, "assoc(" + mono_name(v, a) + "," + mono_name(v, b) + "," + mono_name(v, e) + ")", r, check);
      }
  const std::size_t m = sp.m();
  for (const auto& a : monos)
    for (const auto& b : monos) {
      bool holo = true, anti = true;
      for (std::size_t q = 0; q < m; ++q) {
        if (a[m + q] != 0) holo = false;
        if (b[q] != 0) anti = false;
      }
      WeightedJet x = mono(a), y = mono(b);
      std::string pair = mono_name(v, a) + "," + mono_name(v, b);
      if (holo || anti) {
        WeightedJet r = guarded("star", [&] { return sp.star(x, y) - multiply_full(x, y); });
        jet_residual(c.report, "separation(" + pair + ")", r, check);
      }
      WeightedJet r = guarded("c1", [&] {
        return sp.c1(x, y) - sp.c1(y, x) - sp.poisson_bracket(x, y).scaled(GQ::i());
      });
      jet_residual(c.report, "c1_antisymmetry(" + pair + ")", r, std::max(0, c.weight - 2 * d - 4));
    }
}

void run_berezin(const Context& c) {
  sep::StarProduct sp = star_product(c);
  const int check = 2 * c.order;
  for (const auto& f : amplitudes_or_monomials(c, c.weight, 2)) {
    WeightedJet i = guarded("berezin", [&] { return sp.berezin(f); });
    WeightedJet ii = guarded("berezin_inverse", [&] { return sp.berezin_inverse(f); });
    c.report.result("I(" + body(f) + ")", i.to_string());
    c.report.result("Iinv(" + body(f) + ")", ii.to_string());
    jet_residual(c.report, "I(Iinv(" + body(f) + "))-f", guarded("berezin", [&] { return sp.berezin(ii) - f; }), check);
    jet_residual(c.report, "Iinv(I(" + body(f) + "))-f", guarded("berezin_inverse", [&] { return sp.berezin_inverse(i) - f; }),
                 check);
  }
}

void run_dual_potential(const Context& c) {
  sep::StarProduct sp = star_product(c);
  sep::DualPotential dual = guarded("dual_potential", [&] { return sep::dual_potential(sp); });
  c.report.result("psi", dual.psi.to_string());
  c.report.result("constant", dual.constant.to_string());
  const int check = 2 * c.order;
  auto grads = guarded("gradient_residuals", [&] { return sep::gradient_residuals(sp, dual.psi); });
  for (std::size_t j = 0; j < grads.size(); ++j)
    jet_residual(c.report, "gradient[" + c.p.variables[j] + "]", grads[j], check - 1);
  jet_residual(c.report, "normalization", guarded("normalization_residual", [&] {
                 return sep::normalization_residual(sp, dual.psi);
               }), check - 2);
}

void run_trace_density(const Context& c) {
  sep::StarProduct sp = star_product(c);
  sep::DualPotential dual = guarded("dual_potential", [&] { return sep::dual_potential(sp); });
  sep::TraceDensity td = guarded("trace_density", [&] { return sep::trace_density(sp, dual); });
  c.report.result("log_density", td.log_density.to_string());
  c.report.result("prefactor", td.prefactor.to_string());
  WeightedJet defect = guarded("log_det_defect", [&] { return sep::log_det_defect(sp, dual); });
  c.report.residual("log_det_defect_constant", defect.to_string(), sep::is_constant(defect) && defect.weight() >= 2 * c.order);
  const int d = c.p.degree.value_or(1);
  const VarList& v = c.p.variables;
  std::vector<Exponents> monos = foi::monomials_up_to(v.size(), d);
  const int check = 2 * c.order - 2;
  for (const auto& a : monos)
    for (const auto& b : monos) {
      WeightedJet x = WeightedJet::monomial(v, a, 0, GQ(1), c.weight), y = WeightedJet::monomial(v, b, 0, GQ(1), c.weight);
      sep::DerivationReport r = guarded("derivation_suite", [&] { return sep::derivation_suite(sp, dual, x, y); });
      std::string pair = mono_name(v, a) + "," + mono_name(v, b);
      jet_residual(c.report, "leibniz_left(" + pair + ")", r.leibniz_left, check);
      jet_residual(c.report, "leibniz_right(" + pair + ")", r.leibniz_right, check);
      jet_residual(c.report, "intertwining(" + pair + ")", r.intertwining, check);
    }
}

void run_kfoi_check(const Context& c) {
  sep::StarProduct sp = star_product(c);
  const std::size_t l = static_cast<std::size_t>(c.p.l.value_or(1));
  sep::DualPotential dual = guarded("dual_potential", [&] { return sep::dual_potential(sp); });
  kfoi::ProductPhase phase = guarded("build_Fl", [&] { return kfoi::build_Fl(sp.potential(), l); });
  c.report.result("F", phase.F.to_string());
  c.report.result("hermitian_hessian", phase.report.hermitian.to_string());
  c.report.residual("hessian_matches", phase.report.expected.to_string(), phase.report.matches);
  kfoi::AxiomSuiteOptions opts;
  opts.amplitudes = foi::monomials_up_to(sp.vars().size() * l, c.p.degree.value_or(2));
  opts.g_monomials = foi::monomials_up_to(sp.vars().size(), c.p.g_degree.value_or(1));
  auto res = guarded("kl_axiom_suite", [&] { return kfoi::kl_axiom_suite(sp, dual, l, c.order, opts); });
  for (const auto& r : res) c.report.residual(r.name, r.value, r.pass);
  kfoi::MultinomialResult mr = guarded("multinomial_check", [&] {
    return kfoi::multinomial_check(sp.m(), l, sp.potential().g());
  });
  c.report.residual("multinomial", mr.holds ? "holds" : mr.lhs.to_string(), mr.holds);
}

void run_laplace(const Context& c) {
  const VarList& v = c.p.variables;
  WeightedJet psi = c.p.phase->to_jet(v, std::max(c.weight, c.p.phase->max_degree()));
  for (const auto& t : c.p.phase->terms)
    if (t.nu != 0) throw ProblemError("phase", "laplace phases must be nu-free");
  WeightedJet f = c.p.amplitudes.empty() ? WeightedJet::constant(v, GQ(1), psi.weight())
                                         : c.p.amplitudes[0].to_jet(v, std::max(psi.weight(), c.p.amplitudes[0].max_degree()));
  std::vector<double> hs = c.p.hs.empty() ? std::vector<double>{0.05, 0.02, 0.01} : c.p.hs;
  oracles::LaplaceConfig cfg;
  if (c.p.box) cfg.box_half_width = *c.p.box;
  oracles::LaplaceTable t = guarded("laplace_validate", [&] { return oracles::laplace_validate(psi, f, hs, c.order, cfg); });
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"h", r.h}, {"quadrature", r.quadrature}, {"series", r.series}, {"abs_error", r.abs_error},
                    {"rel_error", r.rel_error}});
  c.report.table = rows;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", t.model_constant);
  c.report.result("model_constant", buf);
  const bool gaussian = c.p.phase->max_degree() <= 2;
  if (gaussian) {
    for (const auto& r : t.rows) {
      std::snprintf(buf, sizeof buf, "%.3e", r.rel_error);
      char name[64];
      std::snprintf(name, sizeof name, "gaussian_rel_error(h=%g)", r.h);
      c.report.residual(name, buf, r.rel_error <= 1e-8);
    }
  } else {
    const double target = c.order + 1;
    std::snprintf(buf, sizeof buf, "%.4f", t.slope);
    c.report.residual("remainder_slope", buf, std::isfinite(t.slope) && std::abs(t.slope - target) <= 0.2 * target);
  }
}

int default_order(Subcommand s) {
  switch (s) {
    case Subcommand::LaplaceValidate:
    case Subcommand::KfoiCheck: return 2;
    default: return 3;
  }
}

int auto_weight(Subcommand s, const Problem& p, int order) {
  int deg = max_degree(p.amplitudes);
  for (const auto& [f, g] : p.products) deg = std::max({deg, f.max_degree(), g.max_degree()});
  switch (s) {
    case Subcommand::Construct:
    case Subcommand::CheckFoi: return 2 * order + 8;
    case Subcommand::LaplaceValidate: return 2 * order + 6;
    case Subcommand::KfoiCheck: return 2 * order + 2 * p.degree.value_or(2) + 8;
    case Subcommand::Star: return 2 * order + 2 * std::max(deg, p.degree.value_or(2)) + 4;
    default: return 2 * order + 2 * std::max(deg, p.degree.value_or(2)) + 6;
  }
}

}  // namespace

const std::vector<std::pair<std::string, Subcommand>>& subcommands() {
  static const std::vector<std::pair<std::string, Subcommand>> list = {
      {"construct", Subcommand::Construct},         {"check-foi", Subcommand::CheckFoi},
      {"star", Subcommand::Star},                   {"berezin", Subcommand::Berezin},
      {"dual-potential", Subcommand::DualPotential}, {"trace-density", Subcommand::TraceDensity},
      {"kfoi-check", Subcommand::KfoiCheck},        {"laplace-validate", Subcommand::LaplaceValidate},
  };
  return list;
}

const char* to_string(Subcommand s) {
  for (const auto& [name, v] : subcommands())
    if (v == s) return name.c_str();
  return "?";
}

Kind expected_kind(Subcommand s) {
  switch (s) {
    case Subcommand::Construct:
    case Subcommand::CheckFoi: return Kind::Foi;
    case Subcommand::KfoiCheck: return Kind::Kfoi;
    case Subcommand::LaplaceValidate: return Kind::Laplace;
    default: return Kind::Star;
  }
}

Report run_task(Subcommand s, const Problem& p, const RunOptions& opts) {
  if (p.kind != expected_kind(s))
    throw ProblemError("kind", std::string(to_string(s)) + " expects a problem of kind " + to_string(expected_kind(s)));
  auto start = std::chrono::steady_clock::now();
  Report report;
  int order = opts.order.value_or(p.truncation.order.value_or(default_order(s)));
  if (order <= 0) throw ProblemError("truncation.order", "truncation must be positive");
  int weight = opts.weight.value_or(p.truncation.weight.value_or(auto_weight(s, p, order)));
  if (weight <= 0) throw ProblemError("truncation.weight", "truncation must be positive");

  json normalized = render_problem(p);
  report.inputs_hash = sha256_hex(normalized.dump());
  report.task = {{"subcommand", to_string(s)}, {"kind", to_string(p.kind)}, {"order", order}, {"weight", weight}};

  Context c{p, order, weight, report};
  switch (s) {
    case Subcommand::Construct: run_construct(c); break;
    case Subcommand::CheckFoi: run_check_foi(c); break;
    case Subcommand::Star: run_star(c); break;
    case Subcommand::Berezin: run_berezin(c); break;
    case Subcommand::DualPotential: run_dual_potential(c); break;
    case Subcommand::TraceDensity: run_trace_density(c); break;
    case Subcommand::KfoiCheck: run_kfoi_check(c); break;
    case Subcommand::LaplaceValidate: run_laplace(c); break;
  }
  report.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace oscint::cli
