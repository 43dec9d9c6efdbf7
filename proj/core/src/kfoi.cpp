#include "oscint/kfoi.hpp"

#include "oscint/distribution.hpp"
#include "oscint/error.hpp"

#include <numeric>

namespace oscint::kfoi {

namespace {

int degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

std::string mono_name(const VarList& vars, const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    out += (out.empty() ? "" : "*") + vars[i] + (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
  }
  return out.empty() ? "1" : out;
}

// Chart variable k of factor slot (1..l), or the origin for slot 0 and slot l+1.
std::optional<std::string> slot_variable(const VarList& chart, std::size_t k, std::size_t slot, std::size_t l) {
  if (slot == 0 || slot > l) return std::nullopt;
  return factor_variable(chart[k], slot);
}

// Phi~(x_a, x_b): holomorphic variables from slot a, antiholomorphic from slot b.
WeightedJet extend_to_slots(const WeightedJet& f, std::size_t m, std::size_t a, std::size_t b, std::size_t l,
                            const VarList& target) {
  SubstitutionPlan plan;
  for (std::size_t p = 0; p < m; ++p) {
    plan[f.vars()[p]] = slot_variable(f.vars(), p, a, l);
    plan[f.vars()[m + p]] = slot_variable(f.vars(), m + p, b, l);
  }
  return substitute(f, plan, target);
}

std::string verdict_value(const LaurentScalar& s) { return s.to_string(); }

bool vanishes(const LaurentScalar& s, int order) { return s.order() >= order && s.vanishes_through(order); }

}  // namespace

std::string factor_variable(const std::string& base, std::size_t i) { return base + "_" + std::to_string(i); }

VarList product_variables(const VarList& chart, std::size_t l) {
  VarList out;
  for (std::size_t i = 1; i <= l; ++i)
    for (const auto& v : chart) out.push_back(factor_variable(v, i));
  return out;
}

foi::ComplexStructure product_complex_structure(std::size_t m, std::size_t l) {
  foi::ComplexStructure cs;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t p = 0; p < m; ++p) cs.pairs.emplace_back(i * 2 * m + p, i * 2 * m + m + p);
  return cs;
}

WeightedJet analytic_extend(const sep::KahlerPotential& phi) {
  const VarList& chart = phi.vars();
  const std::size_t m = phi.m();
  VarList target;
  for (const auto& v : chart) target.push_back(v + "_x");
  for (const auto& v : chart) target.push_back(v + "_y");
  SubstitutionPlan plan;
  for (std::size_t p = 0; p < m; ++p) {
    plan[chart[p]] = chart[p] + "_x";
    plan[chart[m + p]] = chart[m + p] + "_y";
  }
  return substitute(phi.phi(), plan, target);
}

WeightedJet restrict_to_diagonal(const WeightedJet& extended, const VarList& chart) {
  SubstitutionPlan plan;
  for (const auto& v : chart) {
    plan[v + "_x"] = v;
    plan[v + "_y"] = v;
  }
  return substitute(extended, plan, chart);
}

ProductPhase build_Fl(const sep::KahlerPotential& phi, std::size_t l) {
  if (l == 0) throw Error(ErrorKind::InvalidArgument, "l must be positive");
  const std::size_t m = phi.m();
  const VarList& chart = phi.vars();
  const VarList pv = product_variables(chart, l);
  ProductPhase out;
  out.l = l;
  out.F = WeightedJet(pv, phi.phi().weight());
  for (std::size_t i = 0; i <= l; ++i) out.F += extend_to_slots(phi.phi(), m, i, i + 1, l, pv);
  for (std::size_t i = 0; i <= l; ++i) out.F -= extend_to_slots(phi.phi(), m, i, i, l, pv);

  WeightedJet f1 = out.F.nu_component(-1);
  const std::size_t n = pv.size();
  HessianReport& r = out.report;
  r.critical_value = f1.coeff(Exponents(n, 0), 0);
  r.gradient_vanishes = true;
  for (std::size_t a = 0; a < n; ++a) {
    Exponents e(n, 0);
    e[a] = 1;
    if (!f1.coeff(e, 0).is_zero()) r.gradient_vanishes = false;
  }
  auto second = [&](std::size_t a, std::size_t b) {
    Exponents e(n, 0);
    ++e[a];
    ++e[b];
    return f1.coeff(e, 0) * (a == b ? GQ(2) : GQ(1));
  };
  auto holo = [&](std::size_t i, std::size_t p) { return i * 2 * m + p; };
  auto anti = [&](std::size_t i, std::size_t q) { return i * 2 * m + m + q; };
  r.holomorphic_block_vanishes = r.antiholomorphic_block_vanishes = true;
  r.hermitian = Matrix(l * m, l * m);
  r.expected = Matrix(l * m, l * m);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) {
          if (!second(holo(i, p), holo(j, q)).is_zero()) r.holomorphic_block_vanishes = false;
          if (!second(anti(i, p), anti(j, q)).is_zero()) r.antiholomorphic_block_vanishes = false;
          r.hermitian(i * m + p, j * m + q) = second(holo(i, p), anti(j, q));
          if (i == j) r.expected(i * m + p, j * m + q) = -phi.g()(p, q);
          else if (j == i + 1) r.expected(i * m + p, j * m + q) = phi.g()(p, q);
        }
  r.matches = r.critical_value.is_zero() && r.gradient_vanishes && r.holomorphic_block_vanishes &&
              r.antiholomorphic_block_vanishes && r.hermitian == r.expected;
  return out;
}

WeightedJet product_log_density(const sep::StarProduct& sp, const sep::DualPotential& dual, std::size_t l) {
  const VarList pv = product_variables(sp.vars(), l);
  WeightedJet sum = sp.potential().phi() + dual.psi;
  WeightedJet out(pv, sum.weight());
  for (std::size_t i = 1; i <= l; ++i) out += extend_to_slots(sum, sp.m(), i, i, l, pv);
  return out;
}

KEvaluator::KEvaluator(const sep::StarProduct& sp, std::size_t l)
    : sp_(sp), l_(l), pvars_(product_variables(sp.vars(), l)) {
  if (l == 0) throw Error(ErrorKind::InvalidArgument, "l must be positive");
}

std::vector<Exponents> KEvaluator::split(const Exponents& e) const {
  const std::size_t n = sp_.vars().size();
  if (e.size() != n * l_) throw Error(ErrorKind::VariableMismatch, "product multi-index has the wrong length");
  std::vector<Exponents> out;
  for (std::size_t i = 0; i < l_; ++i) out.emplace_back(e.begin() + static_cast<long>(i * n), e.begin() + static_cast<long>((i + 1) * n));
  return out;
}

LaurentScalar KEvaluator::monomials(const std::vector<Exponents>& ms, int order) {
  if (ms.size() != l_) throw Error(ErrorKind::InvalidArgument, "expected one monomial per factor");
  if (order < 0) return LaurentScalar::zero(order);
  auto it = memo_.find(ms);
  if (it != memo_.end() && it->second.order() >= order) return it->second.truncated(order);
  const int w = 2 * order + 1;
  WeightedJet acc = sp_.berezin(WeightedJet::monomial(sp_.vars(), ms[0], 0, GQ(1), w));
  for (std::size_t i = 1; i < l_; ++i)
    acc = sp_.star(acc, sp_.berezin(WeightedJet::monomial(sp_.vars(), ms[i], 0, GQ(1), w)));
  LaurentScalar value = eval0(acc);
  if (value.order() < order) throw InsufficientTruncation("K evaluation", order, value.order());
  memo_[ms] = value;
  return value.truncated(order);
}

LaurentScalar KEvaluator::apply(const WeightedJet& g, int order) {
  if (g.vars() != pvars_) throw Error(ErrorKind::VariableMismatch, "amplitude is not on the product space");
  // K(nu^k x^alpha) has valuation >= k + |alpha|/2, so unknown terms start beyond W/2
  const int cap = std::min(order, floor_div(g.weight(), 2));
  LaurentScalar out = LaurentScalar::zero(cap);
  for (const auto& [mono, c] : g.terms()) {
    LaurentScalar v = monomials(split(mono.exps), cap - mono.nu).shifted(mono.nu);
    out += v * LaurentScalar(c);
  }
  return out;
}

LaurentScalar KEvaluator::apply(const std::vector<WeightedJet>& fs, int order) {
  if (fs.size() != l_) throw Error(ErrorKind::InvalidArgument, "expected one amplitude per factor");
  int cap = order;
  for (std::size_t i = 0; i < l_; ++i) {
    if (!fs[i].same_vars(sp_.potential().phi())) throw Error(ErrorKind::VariableMismatch, "amplitude is not on the chart");
    int others = 0;
    for (std::size_t j = 0; j < l_; ++j)
      if (j != i) others += fs[j].filtration();
    cap = std::min(cap, floor_div(fs[i].weight() + others, 2));
  }
  LaurentScalar out = LaurentScalar::zero(cap);
  std::vector<Exponents> ms(l_);
  auto rec = [&](auto&& self, std::size_t i, int nu, const GQ& coef) -> void {
    if (i == l_) {
      out += monomials(ms, cap - nu).shifted(nu) * LaurentScalar(coef);
      return;
    }
    for (const auto& [mono, c] : fs[i].terms()) {
      ms[i] = mono.exps;
      self(self, i + 1, nu + mono.nu, coef * c);
    }
  };
  rec(rec, 0, 0, GQ(1));
  return out;
}

LaurentScalar kl_apply(const sep::StarProduct& sp, const std::vector<WeightedJet>& fs, int order) {
  KEvaluator ev(sp, fs.size());
  return ev.apply(fs, order);
}

LaurentScalar kl_apply_prime(const sep::StarProduct& sp, const std::vector<WeightedJet>& fs, int order) {
  if (fs.empty()) throw Error(ErrorKind::InvalidArgument, "l must be positive");
  WeightedJet acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = sp.star_prime(acc, fs[i]);
  LaurentScalar v = eval0(sp.berezin(acc));
  if (v.order() < order) throw InsufficientTruncation("K evaluation through the Wick-type product", order, v.order());
  return v.truncated(order);
}

std::vector<AxiomResidual> kl_axiom_suite(const sep::StarProduct& sp, const sep::DualPotential& dual, std::size_t l,
                                          int order, const AxiomSuiteOptions& options) {
  const std::size_t m = sp.m();
  const VarList& chart = sp.vars();
  KEvaluator ev(sp, l);
  const VarList& pv = ev.product_vars();
  ProductPhase phase = build_Fl(sp.potential(), l);
  WeightedJet u = product_log_density(sp, dual, l);
  WeightedJet s = phase.F + u;
  std::vector<AxiomResidual> out;

  int max_deg = 0;
  for (const auto& e : options.amplitudes) max_deg = std::max(max_deg, degree(e));
  for (const auto& e : options.g_monomials) max_deg = std::max(max_deg, degree(e));
  const int w = 2 * order + 8 + 2 * max_deg;

  for (const auto& e : options.amplitudes) {
    if (e.size() != pv.size()) throw Error(ErrorKind::VariableMismatch, "amplitude multi-index has the wrong length");
    WeightedJet g = WeightedJet::monomial(pv, e, 0, GQ(1), w);
    const std::string gname = mono_name(pv, e);
    for (std::size_t j = 0; j < pv.size(); ++j) {
      LaurentScalar v = ev.apply(derive(g, j) + multiply_full(derive(s, j), g), order);
      out.push_back({"ibp[d_" + pv[j] + "](" + gname + ")", verdict_value(v), vanishes(v, order)});
    }
    LaurentScalar lhs = ev.apply(g, order + 1).nu_derive();
    WeightedJet ml = WeightedJet::monomial(pv, Exponents(pv.size(), 0), -1, GQ(static_cast<long>(m * l)), w);
    LaurentScalar rhs = ev.apply(nu_derive(g) + multiply_full(nu_derive(s), g) - multiply_full(ml, g), order);
    LaurentScalar v = lhs - rhs;
    out.push_back({"strong(" + gname + ")", verdict_value(v), vanishes(v, order)});
  }

  for (const auto& ge : options.g_monomials) {
    if (ge.size() != chart.size()) throw Error(ErrorKind::VariableMismatch, "g multi-index has the wrong length");
    WeightedJet g = WeightedJet::monomial(chart, ge, 0, GQ(1), w);
    WeightedJet ginv = sp.berezin_inverse(g);
    for (const auto& e : options.amplitudes) {
      WeightedJet amp = WeightedJet::monomial(pv, e, 0, GQ(1), w);
      std::vector<WeightedJet> fs;
      for (const auto& f : ev.split(e)) fs.push_back(WeightedJet::monomial(chart, f, 0, GQ(1), w));
      for (std::size_t i = 0; i <= l; ++i) {
        WeightedJet gt = extend_to_slots(g, m, i, i + 1, l, pv);
        LaurentScalar lhs = ev.apply(multiply_full(gt, amp), order);
        std::vector<WeightedJet> rf = fs;
        if (i < l) rf[i] = sp.star_prime(ginv, rf[i]);
        else rf[l - 1] = sp.star_prime(rf[l - 1], ginv);
        LaurentScalar v = lhs - ev.apply(rf, order);
        out.push_back({"gK[g=" + mono_name(chart, ge) + ",i=" + std::to_string(i) + "](" + mono_name(pv, e) + ")",
                       verdict_value(v), vanishes(v, order)});
      }
    }
  }

  LaurentScalar unit = ev.monomials(std::vector<Exponents>(l, Exponents(chart.size(), 0)), order) - LaurentScalar(1);
  out.push_back({"K(1,...,1)-1", verdict_value(unit), vanishes(unit, order)});

  // tau of mu^l against the reference order (all dz, then all dzbar)
  sep::TraceDensity td = sep::trace_density(sp, dual);
  ExteriorForm vol = ExteriorForm::scalar(GQ(1));
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t p = 0; p < m; ++p) vol = wedge(vol, ExteriorForm::generator(static_cast<unsigned>(i * m + p)));
    for (std::size_t q = 0; q < m; ++q)
      vol = wedge(vol, ExteriorForm::generator(static_cast<unsigned>(l * m + i * m + q)));
  }
  GQ sign = vol.coeff((ExteriorForm::Blade{1} << (2 * m * l)) - 1);
  GQ c = sign;
  for (std::size_t i = 0; i < l; ++i) c *= td.prefactor.c();
  foi::NormConstant tau(c, static_cast<int>(l) * td.prefactor.two_pi_half_exponent(),
                        GQ(static_cast<long>(l)) * td.prefactor.exp_arg());
  foi::PhasePair pair(phase.F, u, product_complex_structure(m, l));
  foi::NormConstant alpha = foi::hermitian_model_constant(pair, tau);
  out.push_back({"model_constant", alpha.to_string(), alpha.is_one()});
  return out;
}

MultinomialResult multinomial_check(std::size_t m, std::size_t l, const Matrix& g) {
  if (m == 0 || l == 0 || 2 * m * l > 64) throw Error(ErrorKind::InvalidArgument, "multinomial_check needs 1 <= 2ml <= 64");
  if (g.rows() != m || g.cols() != m) throw Error(ErrorKind::InvalidArgument, "g must be m x m");
  auto w = [&](std::size_t j, std::size_t p) { return ExteriorForm::generator(static_cast<unsigned>(j * m + p)); };
  auto wb = [&](std::size_t s, std::size_t q) { return ExteriorForm::generator(static_cast<unsigned>(m * l + s * m + q)); };
  auto omega = [&](std::size_t j, std::size_t s) {
    ExteriorForm f;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = 0; q < m; ++q) f += wedge(w(j, p), wb(s, q)).scaled(GQ::i() * g(p, q));
    return f;
  };
  ExteriorForm big;
  for (std::size_t j = 0; j < l; ++j) big += omega(j, j);
  for (std::size_t j = 0; j + 1 < l; ++j) big -= omega(j, j + 1);
  MultinomialResult out;
  out.lhs = big.power(static_cast<unsigned>(m * l));
  ExteriorForm prod = ExteriorForm::scalar(GQ(1));
  for (std::size_t j = 0; j < l; ++j) prod = wedge(prod, omega(j, j).power(static_cast<unsigned>(m)));
  GQ coef = multi_factorial(Exponents{static_cast<int>(m * l)});
  GQ mf = multi_factorial(Exponents{static_cast<int>(m)});
  for (std::size_t j = 0; j < l; ++j) coef *= mf.inverse();
  out.rhs = prod.scaled(coef);
  out.holds = out.lhs == out.rhs;
  return out;
}

MultinomialResult multinomial_check(std::size_t m, std::size_t l) { return multinomial_check(m, l, Matrix::identity(m)); }

}  // namespace oscint::kfoi
