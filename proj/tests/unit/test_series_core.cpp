#include "helpers.hpp"

#include "oscint/diff_operator.hpp"
#include "oscint/distribution.hpp"
#include "oscint/error.hpp"
#include "oscint/exterior.hpp"
#include "oscint/matrix.hpp"

#include <gtest/gtest.h>

using namespace oscint;
using namespace oscint::testing;

namespace {

const VarList X = {"x"};
const VarList XY = {"x", "y"};
const VarList Z = {"z", "zb"};

}  // namespace

TEST(GaussianRational, CanonicalFormAndFieldOps) {
  GQ a(mpq_class(2, 4), mpq_class(-3, 6));
  EXPECT_EQ(a.re(), mpq_class(1, 2));
  EXPECT_EQ(a.to_string(), "1/2-1/2 i");
  EXPECT_EQ(a * a.inverse(), GQ(1));
  EXPECT_EQ(GQ::i() * GQ::i(), GQ(-1));
  EXPECT_THROW(GQ(0).inverse(), Error);
}

TEST(GaussianRational, ParseRoundTrip) {
  for (const char* s : {"0", "-3", "5/7", "1/2+1/3 i", "-2/3-1 i", "4 i", "-1/9 i"}) {
    GQ g = GQ::parse(s);
    EXPECT_EQ(g.to_string(), s);
    EXPECT_EQ(GQ::parse(g.to_string()), g);
  }
  EXPECT_EQ(GQ::parse_rational("\xE2\x88\x92" "1"), mpq_class(-1));
  EXPECT_EQ(GQ::parse_rational(" 6 / 8 "), mpq_class(3, 4));
  EXPECT_THROW(GQ::parse_rational("1/0"), Error);
  EXPECT_THROW(GQ::parse_rational("0.5"), Error);
}

TEST(LaurentScalar, TruncatedArithmetic) {
  LaurentScalar a = LaurentScalar(GQ(1), 3) + nu_pow(q(1, 2), 1);
  LaurentScalar b = LaurentScalar(GQ(1), 3) - nu_pow(q(1, 2), 1);
  LaurentScalar p = a * b;
  EXPECT_EQ(p.order(), 3);
  EXPECT_EQ(p.coeff(0), GQ(1));
  EXPECT_EQ(p.coeff(1), GQ(0));
  EXPECT_EQ(p.coeff(2), q(-1, 4));
  LaurentScalar r = (p / a).truncated(3);
  EXPECT_TRUE(r.agrees_with(b));
  EXPECT_EQ(nu_pow(GQ(3), 2).nu_derive(), nu_pow(GQ(6), 1));
  EXPECT_TRUE(LaurentScalar::zero(4).vanishes_through(4));
  EXPECT_FALSE(LaurentScalar::zero(2).vanishes_through(4));
}

TEST(WeightedJet, MultiplyExamples) {
  WeightedJet one = WeightedJet::constant(X, GQ(1), 10);
  WeightedJet x = WeightedJet::variable(X, "x", 10);
  WeightedJet p = (one + x) * (one - x);
  EXPECT_EQ(p, one - mono(X, {2}, 0, GQ(1), 10));

  WeightedJet a = mono(X, {1}, -1, GQ(1), 6);
  WeightedJet sq = a * a;
  EXPECT_EQ(sq.coeff({2}, -2), GQ(1));
  EXPECT_EQ(sq.filtration(), -2);

  WeightedJet x2 = mono(X, {2}, 0, GQ(1), 3);
  EXPECT_TRUE((x2 * x2).empty());
}

TEST(WeightedJet, MultiplyFullKeepsRelativePrecision) {
  WeightedJet a = mono(X, {2}, 0, GQ(1), 4) + mono(X, {4}, 0, GQ(1), 4);
  WeightedJet b = mono(X, {3}, 0, GQ(1), 5);
  WeightedJet full = multiply_full(a, b);
  EXPECT_EQ(full.weight(), std::min(a.weight() + b.filtration(), b.weight() + a.filtration()));
  EXPECT_EQ(full.coeff({7}, 0), GQ(1));
  EXPECT_TRUE((a * b).truncated(4) == full.truncated(4));
}

TEST(WeightedJet, DeriveExamples) {
  EXPECT_EQ(derive(mono(X, {2}, 0, GQ(1), 8), "x"), mono(X, {1}, 0, GQ(2), 7));
  EXPECT_EQ(derive(mono(X, {3}, -1, GQ(1), 8), "x").coeff({2}, -1), GQ(3));
  EXPECT_TRUE(derive(WeightedJet::constant(X, GQ(5), 8), "x").empty());
  EXPECT_THROW(derive(mono(X, {1}, 0, GQ(1), 4), "y"), Error);
}

TEST(WeightedJet, NuDeriveExamples) {
  EXPECT_EQ(nu_derive(mono(X, {1}, 2, GQ(1), 9)).coeff({1}, 1), GQ(2));
  EXPECT_EQ(nu_derive(mono(X, {2}, -1, GQ(1), 9)).coeff({2}, -2), GQ(-1));
  EXPECT_TRUE(nu_derive(mono(X, {3}, 0, GQ(1), 9)).empty());
}

TEST(WeightedJet, ExpLogExamples) {
  // nu^-k x^{3k} has weight k, so every k <= 6 survives at W = 6
  WeightedJet e = exp(mono(X, {3}, -1, GQ(1), 6));
  WeightedJet expect(X, 6);
  GQ fact(1);
  for (int k = 0; k <= 6; ++k) {
    if (k > 0) fact *= GQ(k);
    expect.add_term({3 * k}, -k, fact.inverse());
  }
  EXPECT_EQ(e, expect);
  EXPECT_EQ(e.coeff({6}, -2), q(1, 2));

  WeightedJet c = mono(X, {0}, 1, GQ(3), 8);
  WeightedJet ec = exp(c);
  EXPECT_EQ(ec.coeff({0}, 2), q(9, 2));
  EXPECT_EQ(ec.coeff({0}, 3), q(9, 2));

  EXPECT_THROW(exp(mono(X, {1}, -1, GQ(1), 6)), Error);

  WeightedJet l = log(WeightedJet::constant(X, GQ(1), 4) + mono(X, {1}, 1, GQ(1), 4));
  EXPECT_EQ(l, mono(X, {1}, 1, GQ(1), 4));
  WeightedJet nx2 = mono(X, {2}, 1, GQ(1), 12);
  EXPECT_EQ(log(exp(nx2)), nx2);
  EXPECT_THROW(log(WeightedJet::constant(X, GQ(2), 4) + mono(X, {1}, 0, GQ(1), 4)), Error);
}

TEST(WeightedJet, ExpLogRoundTripRandom) {
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    WeightedJet f = random_jet(rng, XY, 8, 8, 0);
    WeightedJet f1(XY, 8);
    for (const auto& [m, c] : f.terms())
      if (m.weight() >= 1) f1.add_term(m, c);
    EXPECT_EQ(log(exp(f1)), f1);
  }
}

TEST(WeightedJet, SubstituteExamples) {
  const VarList two = {"z_1", "zb_2"};
  WeightedJet zzb = mono(Z, {1, 1}, 0, GQ(1), 6);
  WeightedJet s = substitute(zzb, {{"z", "z_1"}, {"zb", "zb_2"}}, two);
  EXPECT_EQ(s.coeff({1, 1}, 0), GQ(1));
  WeightedJet s0 = substitute(zzb, {{"z", std::nullopt}, {"zb", "zb"}}, Z);
  EXPECT_TRUE(s0.empty());
}

TEST(WeightedJet, Eval0Examples) {
  WeightedJet f = mono(X, {2}, -1, GQ(1), 6) + WeightedJet::constant(X, GQ(3), 6) + mono(X, {1}, 1, GQ(1), 6);
  EXPECT_EQ(eval0(f).coeffs(), LaurentScalar(GQ(3)).coeffs());
  EXPECT_EQ(eval0(WeightedJet::constant(X, GQ(1), 6)).coeff(0), GQ(1));
}

TEST(WeightedJet, LeibnizRandom) {
  std::mt19937 rng(11);
  for (int t = 0; t < 25; ++t) {
    WeightedJet f = random_jet(rng, XY, 9, 9, -1), g = random_jet(rng, XY, 9, 9, -1);
    for (std::size_t v = 0; v < 2; ++v) {
      WeightedJet lhs = derive(f * g, v);
      WeightedJet rhs = derive(f, v) * g + f * derive(g, v);
      EXPECT_TRUE(lhs.agrees_with(rhs));
    }
  }
}

TEST(WeightedJet, RefinementStabilityRandom) {
  std::mt19937 rng(13);
  for (int t = 0; t < 25; ++t) {
    WeightedJet f = random_jet(rng, XY, 12, 12, -1), g = random_jet(rng, XY, 12, 12, -1);
    const int w = 7;
    WeightedJet fw = f.truncated(w), gw = g.truncated(w);
    WeightedJet fw2 = f.truncated(w + 2), gw2 = g.truncated(w + 2);
    WeightedJet coarse = fw * gw;
    EXPECT_EQ((fw2 * gw2).truncated(coarse.weight()), coarse);
    EXPECT_EQ(derive(fw2, 0).truncated(w - 1), derive(fw, 0));
    EXPECT_EQ(nu_derive(fw2).truncated(w - 2), nu_derive(fw));
  }
}

TEST(WeightedJet, FiltrationCertificate) {
  WeightedJet a = mono(X, {3}, -1, GQ(1), 10);
  WeightedJet b = mono(X, {4}, 0, GQ(1), 10);
  EXPECT_EQ((a * b).filtration(), a.filtration() + b.filtration());
  EXPECT_GE(exp(a).filtration(), 0);
}

TEST(DiffOperator, ApplyExamples) {
  DiffOperator dx = DiffOperator::derivative(X, "x", 20);
  EXPECT_EQ(op_apply(dx, mono(X, {2}, 0, GQ(1), 8)).coeff({1}, 0), GQ(2));

  DiffOperator xdx(X, 20);
  xdx.add_term(0, {1}, mono(X, {1}, 0, GQ(1), 20));
  WeightedJet r = op_apply(xdx, mono(X, {1}, 0, GQ(1), 8));
  EXPECT_EQ(r.coeff({1}, 0), GQ(1));
  EXPECT_EQ(r.size(), 1u);

  DiffOperator lap(Z, 20);
  lap.add_term(1, {1, 1}, WeightedJet::constant(Z, GQ(1), 20));
  WeightedJet v = op_apply(lap, mono(Z, {1, 1}, 0, GQ(1), 8));
  EXPECT_EQ(v.coeff({0, 0}, 1), GQ(1));
  EXPECT_EQ(v.size(), 1u);
}

TEST(PointDistribution, ApplyExamples) {
  PointDistribution d = PointDistribution::delta(X, 2);
  LaurentScalar v = d.apply(WeightedJet::constant(X, GQ(1), 6), 2);
  EXPECT_EQ(v.coeff(0), GQ(1));

  PointDistribution g(X, 2);
  g.add(0, {0}, GQ(1));
  g.add(1, {2}, q(1, 2));
  g.add(2, {4}, q(1, 8));
  EXPECT_EQ(g.apply(mono(X, {2}, 0, GQ(1), 8), 2).coeff(1), GQ(1));
  EXPECT_EQ(g.apply(mono(X, {4}, 0, GQ(1), 8), 2).coeff(2), GQ(3));
  // nu-linearity
  LaurentScalar a = g.apply(mono(X, {2}, 0, GQ(1), 10), 2);
  LaurentScalar b = g.apply(mono(X, {2}, 1, GQ(1), 10), 3);
  EXPECT_TRUE(b.agrees_with(a.shifted(1)));
  EXPECT_THROW(g.apply(mono(X, {2}, 0, GQ(1), 1), 2), InsufficientTruncation);
}

TEST(Matrix, InverseAndDeterminant) {
  Matrix m{{GQ(2), GQ(1)}, {GQ(1), GQ(1)}};
  EXPECT_EQ(determinant(m), GQ(1));
  EXPECT_EQ(m * inverse(m), Matrix::identity(2));
  Matrix s{{GQ(1), GQ(2)}, {GQ(2), GQ(4)}};
  EXPECT_THROW(inverse(s), Error);
}

TEST(ExteriorForm, WedgeSigns) {
  ExteriorForm e0 = ExteriorForm::generator(0), e1 = ExteriorForm::generator(1);
  EXPECT_EQ(wedge(e0, e1), wedge(e1, e0).scaled(GQ(-1)));
  EXPECT_TRUE(wedge(e0, e0).is_zero());
  ExteriorForm w = wedge(e0, e1) + wedge(ExteriorForm::generator(2), ExteriorForm::generator(3));
  EXPECT_EQ(w.power(2).coeff(0b1111), GQ(2));
}
