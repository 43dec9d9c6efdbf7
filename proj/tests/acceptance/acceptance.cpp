// Acceptance run: one PASS/FAIL line per criterion. Optional argument selects a single criterion.

#include "oscint/error.hpp"
#include "oscint/foi.hpp"
#include "oscint/kfoi.hpp"
#include "oscint/oracles.hpp"
#include "oscint/sep_vars.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace oscint;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  int checks = 0;
  int failures = 0;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ < 3) detail << " [" << what << "]";
    pass = false;
  }
};

GQ q(long a, long b = 1) { return GQ::rational(a, b); }

WeightedJet mono(const VarList& v, const Exponents& e, int nu, const GQ& c, int w) {
  return WeightedJet::monomial(v, e, nu, c, w);
}

const VarList X = {"x"};
const VarList XY = {"x", "y"};

foi::PhasePair cubic_pair(int w) {
  return foi::PhasePair::flat_density(mono(X, {2}, -1, q(-1, 2), w) + mono(X, {3}, -1, q(1, 6), w));
}

foi::PhasePair gaussian_pair(int w) { return foi::PhasePair::flat_density(mono(X, {2}, -1, q(-1, 2), w)); }

struct TestPair {
  std::string name;
  foi::PhasePair pair;
  bool has_cubic = false;
};

// Quadratic phase with small rational cubic or quartic perturbations, n <= 2, half of them with a log-density.
std::vector<TestPair> random_pairs(int w) {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<long> num(-3, 3), den(2, 7);
  auto small = [&] {
    long a = num(rng);
    return a == 0 ? q(1, den(rng)) : q(a, den(rng));
  };
  std::vector<TestPair> out;
  for (int k = 0; k < 10; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(k % 2);
    const VarList& v = n == 1 ? X : XY;
    const bool cubic = k % 4 < 2;
    const bool with_u = k % 3 != 0;
    WeightedJet phase = WeightedJet(v, w);
    if (n == 1) {
      phase += mono(v, {2}, -1, -q(1 + k % 3, 2), w);
      phase += cubic ? mono(v, {3}, -1, small(), w) : mono(v, {4}, -1, small(), w);
      phase += mono(v, {1}, 0, small(), w);
    } else {
      // diagonally dominant negative definite quadratic part
      phase += mono(v, {2, 0}, -1, q(-1), w) + mono(v, {0, 2}, -1, q(-3, 2), w) + mono(v, {1, 1}, -1, small(), w);
      if (cubic) phase += mono(v, {2, 1}, -1, small(), w) + mono(v, {0, 3}, -1, small(), w);
      phase += mono(v, {4, 0}, -1, small(), w) + mono(v, {1, 3}, -1, small(), w);
      phase += mono(v, {0, 1}, 0, small(), w);
    }
    WeightedJet u = WeightedJet(v, w);
    if (with_u) {
      Exponents e1(n, 0), e2(n, 0);
      e1[0] = 1;
      e2[n - 1] = 2;
      u += mono(v, e1, 0, small(), w) + mono(v, e2, 0, small(), w) + mono(v, Exponents(n, 0), 1, small(), w);
    }
    std::string name = "pair" + std::to_string(k) + "(n=" + std::to_string(n) + (cubic ? ",cubic" : ",quartic") +
                       (with_u ? ",u" : "") + ")";
    out.push_back({name, foi::PhasePair(phase, u), cubic});
  }
  return out;
}

void ibp_suite(Outcome& o, const std::string& tag, const PointDistribution& l, const foi::PhasePair& p, int through,
               int amp_weight) {
  for (const auto& a : foi::monomials_up_to(p.n(), 4))
    for (std::size_t i = 0; i < p.n(); ++i) {
      LaurentScalar r = foi::ibp_residual(l, p, i, mono(p.vars(), a, 0, q(1), amp_weight));
      o.check(r.vanishes_through(through), tag + " ibp dir " + std::to_string(i));
    }
}

constexpr int kPhaseWeight = 24;
constexpr int kAmpWeight = 34;

// 1
void gaussian_vs_wick(Outcome& o) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> e(-4, 4);
  for (std::size_t n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 2; ++trial) {
      Matrix h(n, n);
      do {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i; j < n; ++j) h(i, j) = h(j, i) = q(e(rng), 1 + static_cast<long>(i + j + trial));
      } while (determinant(h).is_zero());
      VarList v;
      for (std::size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(i + 1));
      PointDistribution g = foi::gaussian_foi(foi::HessianData::from_matrix(h), v, 4);
      oracles::WickCovariance cov = oracles::WickCovariance::from_hessian(h);
      for (const auto& a : foi::monomials_up_to(n, 8)) {
        LaurentScalar lhs = g.apply(mono(v, a, 0, q(1), 20), 4);
        o.check(lhs.agrees_with(oracles::wick_moment(cov, a)), "n=" + std::to_string(n));
      }
    }
}

// 2
void construction_axiom(Outcome& o) {
  for (const auto& t : random_pairs(kPhaseWeight)) {
    PointDistribution l = foi::construct_foi(t.pair, 7);
    o.check(l.truncated(0) == PointDistribution::delta(t.pair.vars(), 0), t.name + " leading row");
    ibp_suite(o, t.name, l, t.pair, 6, kAmpWeight);
  }
}

// 3
void cubic_benchmark(Outcome& o) {
  foi::PhasePair p = cubic_pair(16);
  PointDistribution l = foi::construct_foi(p, 3);
  LaurentScalar l1 = l.apply(WeightedJet::constant(X, q(1), 16), 3);
  LaurentScalar lx = l.apply(mono(X, {1}, 0, q(1), 16), 3);
  o.check(l1.coeff(0) == q(1) && l1.coeff(1) == q(5, 24), "Lambda(1)");
  o.check(lx.coeff(0).is_zero() && lx.coeff(1) == q(1, 2), "Lambda(x)");
  foi::PhaseSplit s = foi::phase_split(p);
  oracles::WickCovariance cov = oracles::WickCovariance::from_hessian(s.hessian.h);
  WeightedJet pert = s.chi.nu_shift(-1) + s.phi_tilde;
  o.check(l1.agrees_with(oracles::wick_expectation(cov, pert, WeightedJet::constant(X, q(1), 16), 3)), "wick Lambda(1)");
  o.check(lx.agrees_with(oracles::wick_expectation(cov, pert, mono(X, {1}, 0, q(1), 16), 3)), "wick Lambda(x)");
}

// 4
void nu_derivative(Outcome& o) {
  std::vector<TestPair> pairs = random_pairs(kPhaseWeight);
  pairs.push_back({"gaussian", gaussian_pair(kPhaseWeight), false});
  pairs.push_back({"cubic", cubic_pair(kPhaseWeight), true});
  for (const auto& t : pairs) {
    PointDistribution l = foi::construct_foi(t.pair, 8);
    PointDistribution tr = foi::nu_transform(l, t.pair);
    o.check(tr.truncated(0) == l.truncated(0), t.name + " leading row");
    ibp_suite(o, t.name + " transformed", tr, t.pair, 6, kAmpWeight);
    LaurentScalar b = foi::strong_normalize(l, t.pair);
    LaurentScalar d = foi::strong_defect(l, t.pair.shifted(b));
    o.check(d.agrees_with(LaurentScalar(q(1))) && d.order() >= 5, t.name + " normalized defect " + d.to_string());
  }
  foi::PhasePair g = gaussian_pair(kPhaseWeight);
  LaurentScalar dg = foi::strong_defect(foi::construct_foi(g, 8), g);
  o.check(dg.agrees_with(LaurentScalar(q(1))), "gaussian defect " + dg.to_string());
}

// 5
void lambda1_audit(Outcome& o) {
  std::vector<TestPair> pairs = random_pairs(16);
  pairs.push_back({"gaussian", gaussian_pair(16), false});
  for (const auto& t : pairs) {
    foi::Lambda1Report r = foi::lambda1_check(foi::construct_foi(t.pair, 2), t.pair);
    o.check(r.A_matches, t.name + " A");
    if (!t.has_cubic) o.check(r.stated_formula_holds, t.name + " B");
    o.check(r.full_formula_holds, t.name + " B full");
  }
  foi::PhasePair c = cubic_pair(16);
  foi::Lambda1Report rc = foi::lambda1_check(foi::construct_foi(c, 2), c);
  o.check(rc.A_matches, "cubic A");
  o.check(rc.correction == std::vector<GQ>{q(1, 2)}, "cubic correction");
}

// 6
void pairing_nondegeneracy(Outcome& o) {
  const int w = 30;
  PointDistribution g = foi::construct_foi(gaussian_pair(w), 10);
  PointDistribution c = foi::construct_foi(cubic_pair(w), 10);
  for (int d = 0; d <= 3; ++d) {
    o.check(foi::pairing_rank(g, d).full_rank, "gaussian d=" + std::to_string(d));
    o.check(foi::pairing_rank(c, d).full_rank, "cubic d=" + std::to_string(d));
  }
}

// 7
void flat_star(Outcome& o) {
  const int w = 20;
  const VarList z = sep::chart_variables(1);
  sep::StarProduct sp(sep::KahlerPotential(mono(z, {1, 1}, -1, q(1), w)));
  auto zm = [&](int a, int b) { return mono(z, {a, b}, 0, q(1), w); };
  WeightedJet nu1 = mono(z, {0, 0}, 1, q(1), w);
  WeightedJet p1 = sp.star(zm(0, 1), zm(1, 0)) - zm(1, 1) - nu1;
  o.check(p1.vanishes_through(w - 2), "zb*z");
  WeightedJet p2 = sp.star(zm(0, 2), zm(2, 0)) - zm(2, 2) - zm(1, 1).scaled(q(4)).nu_shift(1) -
                   mono(z, {0, 0}, 2, q(2), w);
  o.check(p2.vanishes_through(w - 4), "zb^2*z^2");
  std::vector<Exponents> ms = foi::monomials_up_to(2, 3);
  for (const auto& a : ms)
    for (const auto& b : ms)
      for (const auto& c : ms) {
        WeightedJet x = zm(a[0], a[1]), y = zm(b[0], b[1]), t = zm(c[0], c[1]);
        WeightedJet r = sp.star(sp.star(x, y), t) - sp.star(x, sp.star(y, t));
        o.check(r.vanishes_through(8), "assoc");
      }
  for (const auto& a : ms)
    for (const auto& b : ms) {
      WeightedJet x = zm(a[0], a[1]), y = zm(b[0], b[1]);
      if (a[1] == 0 || b[0] == 0) o.check((sp.star(x, y) - multiply_full(x, y)).vanishes_through(8), "separation");
      WeightedJet r = sp.c1(x, y) - sp.c1(y, x) - sp.poisson_bracket(x, y).scaled(GQ::i());
      o.check(r.vanishes_through(w - 10), "c1 antisymmetry");
    }
}

// 8
void berezin_dual(Outcome& o) {
  const int w = 16;
  const VarList z = sep::chart_variables(1);
  sep::StarProduct flat(sep::KahlerPotential(mono(z, {1, 1}, -1, q(1), w)));
  for (const auto& a : foi::monomials_up_to(2, 3)) {
    WeightedJet f = mono(z, a, 0, q(1), w);
    o.check((flat.berezin(flat.berezin_inverse(f)) - f).vanishes_through(8), "I Iinv");
    o.check((flat.berezin_inverse(flat.berezin(f)) - f).vanishes_through(8), "Iinv I");
  }
  sep::DualPotential d = sep::dual_potential(flat);
  o.check((d.psi + mono(z, {1, 1}, -1, q(1), w)).vanishes_through(8), "flat psi " + d.psi.to_string());
  o.check(sep::normalization_residual(flat, d.psi).vanishes_through(6), "normalization");
  for (const auto& g : sep::gradient_residuals(flat, d.psi)) o.check(g.vanishes_through(7), "gradient");
  o.check(sep::is_constant(sep::log_det_defect(flat, d)), "flat trace density");

  sep::StarProduct pert(sep::KahlerPotential(mono(z, {1, 1}, -1, q(1), w) + mono(z, {2, 2}, -1, q(1, 5), w)));
  sep::DualPotential dp = sep::dual_potential(pert);
  WeightedJet defect = sep::log_det_defect(pert, dp);
  o.check(sep::is_constant(defect) && defect.weight() >= 6, "perturbed trace density " + defect.to_string());
  for (const auto& a : foi::monomials_up_to(2, 2)) {
    WeightedJet f = mono(z, a, 0, q(1), w);
    o.check((pert.berezin(pert.berezin_inverse(f)) - f).vanishes_through(8), "perturbed I Iinv");
  }
}

// 9
void kl_distribution_check(Outcome& o) {
  const VarList z = sep::chart_variables(1);
  sep::KahlerPotential phi(mono(z, {1, 1}, -1, q(1), 30));
  sep::StarProduct sp(phi);
  sep::DualPotential d = sep::dual_potential(sp);
  for (std::size_t l = 1; l <= 2; ++l) {
    kfoi::AxiomSuiteOptions opt;
    opt.amplitudes = l == 1 ? foi::monomials_up_to(2, 4)
                            : std::vector<Exponents>{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {1, 0, 0, 1}};
    opt.g_monomials = l == 1 ? std::vector<Exponents>{{0, 0}, {1, 1}} : std::vector<Exponents>{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    for (const auto& r : kfoi::kl_axiom_suite(sp, d, l, 3, opt))
      o.check(r.pass, "l=" + std::to_string(l) + " " + r.name);
    o.check(kfoi::build_Fl(phi, l).report.matches, "hessian l=" + std::to_string(l));
  }
  o.check(kfoi::build_Fl(phi, 3).report.matches, "hessian l=3");
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t l = 1; l <= 3; ++l)
      o.check(kfoi::multinomial_check(m, l).holds, "multinomial " + std::to_string(m) + "," + std::to_string(l));
}

// 10
void laplace(Outcome& o) {
  WeightedJet psi = mono(X, {2}, 0, q(-1, 2), 10) + mono(X, {3}, 0, q(1, 6), 10);
  oracles::LaplaceTable t = oracles::laplace_validate(psi, WeightedJet::constant(X, q(1), 10), {0.05, 0.02, 0.01}, 2);
  o.detail << " slope=" << t.slope;
  o.check(std::abs(t.slope - 3.0) <= 0.6, "remainder order");
  oracles::LaplaceConfig cfg;
  cfg.box_half_width = 8;
  oracles::LaplaceTable g =
      oracles::laplace_validate(mono(X, {2}, 0, q(-1, 2), 10), WeightedJet::constant(X, q(1), 10), {0.05, 0.02, 0.01}, 2, cfg);
  double worst = 0;
  for (const auto& r : g.rows) worst = std::max(worst, r.rel_error);
  o.detail << " gaussian_rel=" << worst;
  o.check(worst <= 1e-8, "gaussian");
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "gaussian_foi_vs_wick", gaussian_vs_wick},
      {2, "construction_ibp_axiom", construction_axiom},
      {3, "cubic_benchmark", cubic_benchmark},
      {4, "nu_derivative_transform", nu_derivative},
      {5, "lambda1_audit", lambda1_audit},
      {6, "pairing_nondegeneracy", pairing_nondegeneracy},
      {7, "flat_star_product", flat_star},
      {8, "berezin_dual_trace", berezin_dual},
      {9, "kl_distribution", kl_distribution_check},
      {10, "laplace_numeric", laplace},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool ok = true;
  for (const auto& c : all) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %-26s checks=%d failed=%d time=%.2fs%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.checks,
                o.failures, secs, o.detail.str().c_str());
    std::fflush(stdout);
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
