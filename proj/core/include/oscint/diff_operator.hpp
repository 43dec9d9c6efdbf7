#pragma once

#include "oscint/jet.hpp"

#include <map>
#include <utility>

namespace oscint {

// D = sum nu^r * c_{r,beta}(x) * d^beta. Coefficients are jets in the operator's variables.
// weight() bounds the operator itself: D applied to g is exact through
// min(weight() + N_g, W_g + filtration()).
class DiffOperator {
 public:
  using Key = std::pair<int, Exponents>;  // (nu power, derivative multi-index)

  DiffOperator(VarList vars, int weight);
  DiffOperator(std::shared_ptr<const VarList> vars, int weight);

  static DiffOperator identity(VarList vars, int weight);
  static DiffOperator multiplication(const WeightedJet& f);
  static DiffOperator derivative(VarList vars, const std::string& var, int weight);

  const VarList& vars() const { return *vars_; }
  const std::shared_ptr<const VarList>& shared_vars() const { return vars_; }
  int weight() const { return weight_; }
  // Lowest weight by which the operator can shift a term: min(2r + N(c) - |beta|).
  int filtration() const;
  const std::map<Key, WeightedJet>& terms() const { return terms_; }

  // Adds nu^nu * coeff * d^deriv; coeff is reduced to a nu-free view only if it already is one.
  void add_term(int nu, const Exponents& deriv, const WeightedJet& coeff);
  void cap_weight(int weight) { weight_ = std::min(weight_, weight); }

  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator scaled(const GQ& c) const;

  // Human-readable listing of terms.
  std::string to_string() const;

 private:
  std::shared_ptr<const VarList> vars_;
  std::map<Key, WeightedJet> terms_;
  int weight_;
};

WeightedJet op_apply(const DiffOperator& d, const WeightedJet& f);

// Derivative d^beta f.
WeightedJet derive_multi(const WeightedJet& f, const Exponents& beta);

}  // namespace oscint
