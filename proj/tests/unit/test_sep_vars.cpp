#include "helpers.hpp"

#include "oscint/error.hpp"
#include "oscint/oracles.hpp"
#include "oscint/sep_vars.hpp"

#include <gtest/gtest.h>

using namespace oscint;
using namespace oscint::testing;

namespace {

const VarList Z = sep::chart_variables(1);

sep::StarProduct flat(int w) { return sep::StarProduct(sep::KahlerPotential(mono(Z, {1, 1}, -1, GQ(1), w))); }

sep::StarProduct perturbed(int w) {
  return sep::StarProduct(
      sep::KahlerPotential(mono(Z, {1, 1}, -1, GQ(1), w) + mono(Z, {2, 2}, -1, q(1, 3), w)));
}

WeightedJet zm(int a, int b, int w, int nu = 0, const GQ& c = GQ(1)) { return mono(Z, {a, b}, nu, c, w); }

}  // namespace

TEST(KahlerPotential, Validation) {
  EXPECT_EQ(Z, (VarList{"z", "zb"}));
  EXPECT_THROW(sep::KahlerPotential(mono(Z, {2, 0}, -1, GQ(1), 8) + zm(1, 1, 8, -1)), Error);
  EXPECT_THROW(sep::KahlerPotential(zm(1, 1, 8, -2)), Error);
  EXPECT_THROW(sep::KahlerPotential(zm(2, 2, 8, -1)), Error);
  EXPECT_THROW(sep::KahlerPotential(zm(1, 1, 8, -1) + zm(2, 1, 8, -1, GQ::i())), Error);
  EXPECT_EQ(sep::KahlerPotential(zm(1, 1, 8, -1, GQ(2))).g(), Matrix{{GQ(2)}});
}

TEST(LeftMult, FlatExamples) {
  sep::StarProduct sp = flat(20);
  WeightedJet g = zm(2, 3, 12) + zm(1, 0, 12, 1, q(1, 2));
  EXPECT_TRUE(op_apply(sp.left_mult(zm(1, 0, 12)), g).agrees_with(multiply_full(zm(1, 0, 12), g)));

  DiffOperator lzb = sp.left_mult(zm(0, 1, 12));
  EXPECT_TRUE(op_apply(lzb, g).agrees_with(multiply_full(zm(0, 1, 12), g) + derive(g, "z").nu_shift(1)));

  DiffOperator ld = sp.left_mult(zm(0, 1, 12, -1));
  EXPECT_TRUE(op_apply(ld, g).agrees_with(multiply_full(zm(0, 1, 12, -1), g) + derive(g, "z")));
}

TEST(LeftMult, CommutationOracle) {
  for (auto sp : {flat(16), perturbed(14)}) {
    std::vector<WeightedJet> tests = {zm(1, 0, 14), zm(1, 1, 14), zm(2, 1, 14), zm(0, 2, 14)};
    for (const WeightedJet& f : {zm(0, 1, 14), zm(1, 1, 14), zm(0, 2, 14, 0, q(1, 2)) + zm(1, 2, 14)}) {
      DiffOperator a = sp.left_mult(f);
      for (const auto& r : oracles::commutation_residuals(sp.potential(), a, f, tests))
        EXPECT_TRUE(r.value.empty()) << r.name << " = " << r.value.to_string();
    }
  }
}

TEST(Star, FlatExamples) {
  sep::StarProduct sp = flat(24);
  WeightedJet p = sp.star(zm(0, 1, 12), zm(1, 0, 12));
  EXPECT_TRUE(p.agrees_with(zm(1, 1, 12) + zm(0, 0, 12, 1)));
  WeightedJet p2 = sp.star(zm(0, 2, 12), zm(2, 0, 12));
  EXPECT_TRUE(p2.agrees_with(zm(2, 2, 12) + zm(1, 1, 12, 1, GQ(4)) + zm(0, 0, 12, 2, GQ(2))));
  WeightedJet f = zm(2, 1, 12) + zm(0, 3, 12, 1, q(-1, 3));
  EXPECT_TRUE(sp.star(f, zm(0, 0, 12)).agrees_with(f));
  EXPECT_TRUE(sp.star(zm(0, 0, 12), f).agrees_with(f));
}

TEST(Star, SeparationAndAssociativity) {
  sep::StarProduct sp = perturbed(14);
  std::vector<Exponents> ms = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}};
  const int w = 12;
  for (const auto& a : ms)
    for (const auto& b : ms) {
      WeightedJet x = zm(a[0], a[1], w), y = zm(b[0], b[1], w);
      if (a[1] == 0 || b[0] == 0) EXPECT_TRUE(sp.star(x, y).agrees_with(multiply_full(x, y)));
      for (const auto& c : ms) {
        WeightedJet z = zm(c[0], c[1], w);
        WeightedJet r = sp.star(sp.star(x, y), z) - sp.star(x, sp.star(y, z));
        EXPECT_TRUE(r.vanishes_through(6)) << r.to_string();
      }
    }
}

TEST(Star, LeftRightCommute) {
  sep::StarProduct sp = perturbed(14);
  // [L_f, R_g] h = f*(h*g) - (f*h)*g
  for (const auto& f : {zm(0, 1, 12), zm(1, 1, 12)})
    for (const auto& g : {zm(1, 0, 12), zm(2, 1, 12)})
      for (const auto& h : {zm(1, 1, 12), zm(0, 2, 12)})
        EXPECT_TRUE((sp.star(f, sp.star(h, g)) - sp.star(sp.star(f, h), g)).vanishes_through(6));
}

TEST(Star, C1AntisymmetryMatchesPoisson) {
  for (auto sp : {flat(14), perturbed(14)}) {
    std::vector<WeightedJet> fs = {zm(1, 0, 12), zm(0, 1, 12), zm(1, 1, 12), zm(2, 1, 12), zm(0, 3, 12)};
    for (const auto& f : fs)
      for (const auto& g : fs) {
        WeightedJet r = sp.c1(f, g) - sp.c1(g, f) - sp.poisson_bracket(f, g).scaled(GQ::i());
        EXPECT_TRUE(r.empty()) << r.to_string();
      }
  }
  sep::StarProduct sp = flat(14);
  EXPECT_TRUE(sp.poisson_bracket(zm(0, 1, 12), zm(1, 0, 12)).agrees_with(zm(0, 0, 12, 0, -GQ::i())));
}

TEST(Berezin, Examples) {
  sep::StarProduct sp = flat(24);
  EXPECT_TRUE(sp.berezin(zm(1, 1, 12)).agrees_with(zm(1, 1, 12) + zm(0, 0, 12, 1)));
  EXPECT_TRUE(sp.berezin(zm(2, 2, 12)).agrees_with(zm(2, 2, 12) + zm(1, 1, 12, 1, GQ(4)) + zm(0, 0, 12, 2, GQ(2))));
  EXPECT_TRUE(sp.berezin_inverse(zm(1, 1, 12)).agrees_with(zm(1, 1, 12) - zm(0, 0, 12, 1)));
  sep::StarProduct pp = perturbed(14);
  for (const auto& f : {zm(3, 0, 12), zm(0, 2, 12), zm(0, 0, 12)}) EXPECT_TRUE(pp.berezin(f).agrees_with(f));
}

TEST(Berezin, RoundTripAndProducts) {
  sep::StarProduct sp = perturbed(14);
  for (const auto& f : {zm(1, 1, 12), zm(2, 1, 12), zm(1, 2, 12, 1, q(2, 3))}) {
    EXPECT_TRUE((sp.berezin(sp.berezin_inverse(f)) - f).vanishes_through(8));
    EXPECT_TRUE((sp.berezin_inverse(sp.berezin(f)) - f).vanishes_through(8));
  }
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      EXPECT_TRUE((sp.berezin(zm(a, b, 12)) - sp.star(zm(0, b, 12), zm(a, 0, 12))).vanishes_through(10));
}

TEST(StarPrime, Examples) {
  sep::StarProduct sp = flat(24);
  EXPECT_TRUE(sp.star_prime(zm(0, 1, 12), zm(1, 0, 12)).agrees_with(zm(1, 1, 12)));
  EXPECT_TRUE(sp.star_prime(zm(1, 0, 12), zm(0, 1, 12)).agrees_with(zm(1, 1, 12) - zm(0, 0, 12, 1)));
  WeightedJet f = zm(2, 1, 12);
  EXPECT_TRUE(sp.star_prime(f, zm(0, 0, 12)).agrees_with(f));
  EXPECT_TRUE(sp.star_prime(zm(0, 1, 12), zm(1, 0, 12), sep::StarPrimeVariant::Dual)
                  .agrees_with(sp.star_prime(zm(1, 0, 12), zm(0, 1, 12))));
  // Wick separation: b *' f = bf, f *' a = af
  sep::StarProduct pp = perturbed(14);
  WeightedJet g = zm(1, 1, 12);
  EXPECT_TRUE((pp.star_prime(zm(0, 1, 12), g) - multiply_full(zm(0, 1, 12), g)).vanishes_through(8));
  EXPECT_TRUE((pp.star_prime(g, zm(1, 0, 12)) - multiply_full(zm(1, 0, 12), g)).vanishes_through(8));
}

TEST(DualPotential, Flat) {
  sep::StarProduct sp = flat(20);
  sep::DualPotential d = sep::dual_potential(sp);
  EXPECT_EQ(d.psi.terms(), zm(1, 1, 20, -1, GQ(-1)).terms());
  EXPECT_TRUE(d.constant.is_zero());
  EXPECT_TRUE(sep::normalization_residual(sp, d.psi).empty());
}

TEST(DualPotential, Perturbed) {
  sep::StarProduct sp = perturbed(14);
  sep::DualPotential d = sep::dual_potential(sp);
  EXPECT_EQ(d.psi.nu_component(-1), sp.potential().phi().nu_component(-1).scaled(GQ(-1)));
  for (const auto& r : sep::gradient_residuals(sp, d.psi)) EXPECT_TRUE(r.empty()) << r.to_string();
  EXPECT_TRUE(sep::normalization_residual(sp, d.psi).empty());
  EXPECT_TRUE(eval0(d.psi.nu_component(0)).is_zero());
}

TEST(TraceDensity, FlatAndPerturbed) {
  sep::StarProduct sp = flat(16);
  sep::DualPotential d = sep::dual_potential(sp);
  sep::TraceDensity td = sep::trace_density(sp, d);
  EXPECT_TRUE(td.log_density.empty());
  EXPECT_EQ(td.prefactor, foi::NormConstant(GQ::i(), -2));
  EXPECT_TRUE(sep::is_constant(sep::log_det_defect(sp, d)));

  sep::StarProduct pp = perturbed(14);
  sep::DualPotential dp = sep::dual_potential(pp);
  WeightedJet defect = sep::log_det_defect(pp, dp);
  EXPECT_TRUE(sep::is_constant(defect)) << defect.to_string();
}

TEST(Derivations, Examples) {
  sep::StarProduct sp = flat(16);
  sep::DualPotential d = sep::dual_potential(sp);
  EXPECT_TRUE(sep::delta_left(sp, zm(0, 0, 12)).empty());
  sep::DerivationReport r = sep::derivation_suite(sp, d, zm(1, 0, 12), zm(0, 1, 12));
  EXPECT_TRUE(r.leibniz_left.vanishes_through(6));
  EXPECT_TRUE(r.leibniz_right.vanishes_through(6));
  EXPECT_TRUE(r.intertwining.vanishes_through(6));
  sep::DerivationReport r2 = sep::derivation_suite(sp, d, zm(1, 1, 12), zm(0, 0, 12));
  EXPECT_TRUE(r2.intertwining.vanishes_through(6));

  sep::StarProduct pp = perturbed(14);
  sep::DualPotential dp = sep::dual_potential(pp);
  sep::DerivationReport r3 = sep::derivation_suite(pp, dp, zm(1, 1, 12), zm(0, 1, 12));
  EXPECT_TRUE(r3.leibniz_left.empty()) << r3.leibniz_left.to_string();
  EXPECT_TRUE(r3.leibniz_right.empty()) << r3.leibniz_right.to_string();
  EXPECT_TRUE(r3.intertwining.empty()) << r3.intertwining.to_string();
}

TEST(JetMatrix, InverseAndDeterminant) {
  sep::StarProduct sp = perturbed(14);
  const sep::JetMatrix& g = sp.metric();
  const sep::JetMatrix& gi = sp.metric_inverse();
  WeightedJet prod = multiply_full(g[0][0], gi[0][0]);
  EXPECT_TRUE((prod - WeightedJet::constant(Z, GQ(1), prod.weight())).empty());
  EXPECT_EQ(sep::jet_determinant(g).terms(), g[0][0].terms());
}
