#pragma once

#include "oscint/exterior.hpp"
#include "oscint/foi.hpp"
#include "oscint/jet.hpp"
#include "oscint/laurent.hpp"
#include "oscint/matrix.hpp"
#include "oscint/sep_vars.hpp"

#include <map>
#include <string>
#include <vector>

namespace oscint::kfoi {

// Chart variables of factor i (1-based) carry the suffix "_i"; factors are laid out one after another.
std::string factor_variable(const std::string& base, std::size_t i);
VarList product_variables(const VarList& chart, std::size_t l);
foi::ComplexStructure product_complex_structure(std::size_t m, std::size_t l);

// Phi(z, zbar) -> Phi(z_x, zbar_y) in the variables chart_x, chart_y.
WeightedJet analytic_extend(const sep::KahlerPotential& phi);
WeightedJet restrict_to_diagonal(const WeightedJet& extended, const VarList& chart);

struct HessianReport {
  GQ critical_value;
  bool gradient_vanishes = false;
  bool holomorphic_block_vanishes = false;
  bool antiholomorphic_block_vanishes = false;
  Matrix hermitian;  // rows (z^p_i), columns (zbar^q_j)
  Matrix expected;   // -g on the diagonal blocks, g on the block above
  bool matches = false;
};

struct ProductPhase {
  std::size_t l = 0;
  WeightedJet F;
  HessianReport report;
};

// F = sum_{i=0}^{l} Phi~(x_i, x_{i+1}) - sum_{i=0}^{l} Phi(x_i), x_0 = x_{l+1} = origin.
ProductPhase build_Fl(const sep::KahlerPotential& phi, std::size_t l);

// u = sum_i (Phi + Psi)(x_i)
WeightedJet product_log_density(const sep::StarProduct& sp, const sep::DualPotential& dual, std::size_t l);

// Evaluates K(f_1, ..., f_l) = (I f_1 * ... * I f_l)(0), memoizing monomial tuples.
class KEvaluator {
 public:
  KEvaluator(const sep::StarProduct& sp, std::size_t l);

  std::size_t l() const { return l_; }
  const VarList& product_vars() const { return pvars_; }

  // nu-free chart monomials, one per factor; exact through nu^order
  LaurentScalar monomials(const std::vector<Exponents>& ms, int order);
  // jet on the product space
  LaurentScalar apply(const WeightedJet& g, int order);
  // chart jets, one per factor, extended multilinearly
  LaurentScalar apply(const std::vector<WeightedJet>& fs, int order);

  // Chart monomial factors of a product-space multi-index.
  std::vector<Exponents> split(const Exponents& e) const;

 private:
  const sep::StarProduct& sp_;
  std::size_t l_;
  VarList pvars_;
  std::map<std::vector<Exponents>, LaurentScalar> memo_;
};

// K(f_1..f_l) through nu^order.
LaurentScalar kl_apply(const sep::StarProduct& sp, const std::vector<WeightedJet>& fs, int order);
// I(f_1 *' ... *' f_l)(0), the same value computed through the Wick-type product.
LaurentScalar kl_apply_prime(const sep::StarProduct& sp, const std::vector<WeightedJet>& fs, int order);

struct AxiomResidual {
  std::string name;
  std::string value;
  bool pass = false;
};

struct AxiomSuiteOptions {
  std::vector<Exponents> amplitudes;  // product-space monomials
  std::vector<Exponents> g_monomials;  // chart monomials for the extension identities
};

// Integration by parts on U^l, strong association with the -ml/nu term, the extension
// identities, K(1, ..., 1) = 1 and the model constant of (F, mu^l).
std::vector<AxiomResidual> kl_axiom_suite(const sep::StarProduct& sp, const sep::DualPotential& dual, std::size_t l,
                                          int order, const AxiomSuiteOptions& options);

struct MultinomialResult {
  bool holds = false;
  ExteriorForm lhs;  // Omega^{ml}
  ExteriorForm rhs;  // (ml)!/(m!)^l prod_j (omega^{(j,j)})^m
};

// Omega = sum_j omega^{(j,j)} - sum_j omega^{(j,j+1)} with omega^{(j,s)} = i g_{pq} w^p_j ^ wbar^q_s.
MultinomialResult multinomial_check(std::size_t m, std::size_t l, const Matrix& g);
MultinomialResult multinomial_check(std::size_t m, std::size_t l);

}  // namespace oscint::kfoi
