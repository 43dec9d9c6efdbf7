#pragma once

#include "oscint/jet.hpp"
#include "oscint/laurent.hpp"

#include <ostream>
#include <random>

namespace oscint::testing {

inline WeightedJet mono(const VarList& v, Exponents e, int nu, const GQ& c, int w) {
  return WeightedJet::monomial(v, std::move(e), nu, c, w);
}

inline LaurentScalar nu_pow(const GQ& c, int k) { return LaurentScalar::monomial(c, k); }

inline GQ q(long a, long b = 1) { return GQ::rational(a, b); }

// Small random Gaussian rational with numerator in [-5, 5] and denominator in [1, 4].
inline GQ random_gq(std::mt19937& rng, bool real = false) {
  std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
  GQ re = GQ::rational(num(rng), den(rng));
  if (real) return re;
  return re + GQ::i() * GQ::rational(num(rng), den(rng));
}

// Random polynomial jet with terms of weight <= max_term_weight, stored at weight w.
inline WeightedJet random_jet(std::mt19937& rng, const VarList& v, int w, int max_term_weight, int min_nu = 0,
                              int terms = 5) {
  WeightedJet j(v, w);
  std::uniform_int_distribution<int> deg(0, 3), nu(min_nu, 2);
  for (int t = 0; t < terms; ++t) {
    Exponents e(v.size());
    for (auto& x : e) x = deg(rng);
    int r = nu(rng);
    int wt = 2 * r;
    for (int x : e) wt += x;
    if (wt <= max_term_weight && wt <= w) j.add_term(e, r, random_gq(rng));
  }
  return j;
}

}  // namespace oscint::testing

namespace oscint {
inline void PrintTo(const WeightedJet& j, std::ostream* os) { *os << j.to_string(); }
inline void PrintTo(const LaurentScalar& s, std::ostream* os) { *os << s.to_string(); }
inline void PrintTo(const GaussianRational& g, std::ostream* os) { *os << g.to_string(); }
}  // namespace oscint
