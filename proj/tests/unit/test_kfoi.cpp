#include "helpers.hpp"

#include "oscint/error.hpp"
#include "oscint/kfoi.hpp"

#include <gtest/gtest.h>

using namespace oscint;
using namespace oscint::testing;

namespace {

const VarList Z = sep::chart_variables(1);

WeightedJet zm(int a, int b, int w, int nu = 0, const GQ& c = GQ(1)) { return mono(Z, {a, b}, nu, c, w); }

sep::KahlerPotential flat_phi(int w) { return sep::KahlerPotential(zm(1, 1, w, -1)); }

void expect_suite_passes(const sep::StarProduct& sp, std::size_t l, int order, const kfoi::AxiomSuiteOptions& o) {
  sep::DualPotential d = sep::dual_potential(sp);
  auto res = kfoi::kl_axiom_suite(sp, d, l, order, o);
  ASSERT_FALSE(res.empty());
  for (const auto& r : res) EXPECT_TRUE(r.pass) << r.name << " = " << r.value;
}

}  // namespace

TEST(ProductVariables, Layout) {
  EXPECT_EQ(kfoi::product_variables(Z, 2), (VarList{"z_1", "zb_1", "z_2", "zb_2"}));
  foi::ComplexStructure cs = kfoi::product_complex_structure(2, 2);
  ASSERT_EQ(cs.pairs.size(), 4u);
  EXPECT_EQ(cs.pairs[0], (std::pair<std::size_t, std::size_t>{0, 2}));
  EXPECT_EQ(cs.pairs[3], (std::pair<std::size_t, std::size_t>{5, 7}));
}

TEST(AnalyticExtend, Examples) {
  sep::KahlerPotential phi(zm(1, 1, 10, -1) + zm(2, 1, 10, 0) + zm(1, 2, 10, 0));
  WeightedJet ext = kfoi::analytic_extend(phi);
  EXPECT_EQ(ext.vars(), (VarList{"z_x", "zb_x", "z_y", "zb_y"}));
  EXPECT_EQ(ext.coeff({1, 0, 0, 1}, -1), GQ(1));
  EXPECT_EQ(ext.coeff({2, 0, 0, 1}, 0), GQ(1));
  EXPECT_EQ(kfoi::restrict_to_diagonal(ext, Z), phi.phi());
}

TEST(BuildFl, FlatExamples) {
  kfoi::ProductPhase p1 = kfoi::build_Fl(flat_phi(12), 1);
  EXPECT_EQ(p1.F.terms(), mono(kfoi::product_variables(Z, 1), {1, 1}, -1, GQ(-1), 12).terms());
  EXPECT_TRUE(p1.report.matches);

  kfoi::ProductPhase p2 = kfoi::build_Fl(flat_phi(12), 2);
  const VarList pv = kfoi::product_variables(Z, 2);
  WeightedJet expect = mono(pv, {1, 0, 0, 1}, -1, GQ(1), 12) - mono(pv, {1, 1, 0, 0}, -1, GQ(1), 12) -
                       mono(pv, {0, 0, 1, 1}, -1, GQ(1), 12);
  EXPECT_EQ(p2.F.terms(), expect.terms());
  EXPECT_EQ(p2.report.hermitian, (Matrix{{GQ(-1), GQ(1)}, {GQ(0), GQ(-1)}}));
  EXPECT_TRUE(p2.report.matches);
}

TEST(BuildFl, HessianStructureAndConstantShift) {
  sep::KahlerPotential phi(zm(1, 1, 12, -1, GQ(2)) + zm(2, 2, 12, -1, q(1, 5)) + zm(2, 1, 12, -1, q(1, 7)) +
                           zm(1, 2, 12, -1, q(1, 7)) + zm(1, 1, 12, 0, q(1, 2)));
  sep::KahlerPotential shifted(phi.phi() + zm(0, 0, 12, 1, GQ(3)) + zm(0, 0, 12, 0, GQ(-2)));
  for (std::size_t l = 1; l <= 3; ++l) {
    kfoi::ProductPhase p = kfoi::build_Fl(phi, l);
    EXPECT_TRUE(p.report.matches) << "l = " << l;
    EXPECT_EQ(kfoi::build_Fl(shifted, l).F, p.F);
  }
}

TEST(KlApply, Examples) {
  sep::StarProduct sp(flat_phi(24));
  kfoi::KEvaluator k1(sp, 1);
  EXPECT_TRUE(k1.monomials({{1, 1}}, 3).agrees_with(nu_pow(GQ(1), 1)));
  EXPECT_TRUE(kfoi::kl_apply(sp, {zm(0, 1, 12), zm(1, 0, 12)}, 3).agrees_with(nu_pow(GQ(1), 1)));
  EXPECT_TRUE(kfoi::kl_apply(sp, {zm(1, 0, 12), zm(0, 1, 12)}, 3).vanishes_through(3));
  for (std::size_t l = 1; l <= 3; ++l) {
    std::vector<WeightedJet> ones(l, zm(0, 0, 12));
    EXPECT_TRUE(kfoi::kl_apply(sp, ones, 3).agrees_with(LaurentScalar(GQ(1))));
  }
}

TEST(KlApply, LeadingTermAndPrimeCrossCheck) {
  sep::StarProduct sp(sep::KahlerPotential(zm(1, 1, 14, -1) + zm(2, 2, 14, -1, q(1, 3))));
  std::vector<WeightedJet> fs = {zm(0, 0, 12, 0, GQ(2)) + zm(1, 1, 12), zm(0, 0, 12, 0, GQ(3)) + zm(0, 1, 12)};
  LaurentScalar k = kfoi::kl_apply(sp, fs, 2);
  EXPECT_EQ(k.coeff(0), GQ(6));
  EXPECT_TRUE(k.agrees_with(kfoi::kl_apply_prime(sp, fs, 2)));
  WeightedJet f = zm(1, 1, 12) + zm(2, 1, 12, 0, q(1, 2));
  EXPECT_TRUE(kfoi::kl_apply(sp, {f}, 2).agrees_with(eval0(sp.berezin(f))));
}

TEST(KlAxiomSuite, FlatL1DegreeFour) {
  sep::StarProduct sp(flat_phi(30));
  kfoi::AxiomSuiteOptions o;
  o.amplitudes = foi::monomials_up_to(2, 4);
  o.g_monomials = {{1, 1}};
  expect_suite_passes(sp, 1, 3, o);
}

TEST(KlAxiomSuite, FlatL2TestSet) {
  sep::StarProduct sp(flat_phi(30));
  kfoi::AxiomSuiteOptions o;
  o.amplitudes = {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {1, 0, 0, 1}};
  o.g_monomials = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  expect_suite_passes(sp, 2, 3, o);
}

TEST(KlAxiomSuite, PerturbedL1) {
  sep::StarProduct sp(sep::KahlerPotential(zm(1, 1, 16, -1) + zm(2, 2, 16, -1, q(1, 3))));
  kfoi::AxiomSuiteOptions o;
  o.amplitudes = foi::monomials_up_to(2, 2);
  o.g_monomials = {{1, 1}};
  expect_suite_passes(sp, 1, 2, o);
}

TEST(MultinomialCheck, SmallCases) {
  kfoi::MultinomialResult r = kfoi::multinomial_check(1, 2);
  EXPECT_TRUE(r.holds);
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t l = 1; l <= 3; ++l) EXPECT_TRUE(kfoi::multinomial_check(m, l).holds) << m << "," << l;
  Matrix g{{GQ(2), GQ::i()}, {-GQ::i(), GQ(3)}};
  EXPECT_TRUE(kfoi::multinomial_check(2, 2, g).holds);
}
