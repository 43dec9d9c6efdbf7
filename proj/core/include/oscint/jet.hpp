#pragma once

#include "oscint/gaussian_rational.hpp"
#include "oscint/laurent.hpp"

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace oscint {

using Exponents = std::vector<int>;
using VarList = std::vector<std::string>;

// nu^nu * x^exps. Ordered by nu power first, then exponents lexicographically.
struct Monomial {
  int nu = 0;
  Exponents exps;

  auto operator<=>(const Monomial&) const = default;
  int degree() const;
  int weight() const { return degree() + 2 * nu; }
};

// Truncated element of C[[x]]((nu)) graded by |x^i| = 1, |nu| = 2.
// Every term of weight <= weight() is known; zero coefficients are never stored.
class WeightedJet {
 public:
  WeightedJet() : WeightedJet(VarList{}, 0) {}
  WeightedJet(VarList vars, int weight);
  WeightedJet(std::shared_ptr<const VarList> vars, int weight);

  static WeightedJet constant(const WeightedJet& like, const GQ& c);
  static WeightedJet constant(VarList vars, const GQ& c, int weight);
  static WeightedJet monomial(VarList vars, Exponents exps, int nu, const GQ& c, int weight);
  static WeightedJet variable(VarList vars, const std::string& name, int weight);
  // Scalar known through nu^order as a jet: known through weight 2*order+1 at most.
  static WeightedJet from_scalar(const WeightedJet& like, const LaurentScalar& s);

  const VarList& vars() const { return *vars_; }
  const std::shared_ptr<const VarList>& shared_vars() const { return vars_; }
  std::size_t nvars() const { return vars_->size(); }
  std::size_t index_of(const std::string& name) const;
  bool same_vars(const WeightedJet& o) const;

  int weight() const { return weight_; }
  // Minimal stored weight, or weight()+1 for a jet with no stored terms.
  int filtration() const;
  std::optional<int> min_nu() const;
  std::optional<int> max_nu() const;

  const std::map<Monomial, GQ>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  GQ coeff(const Exponents& exps, int nu) const;

  // Terms above the weight bound are dropped.
  void add_term(const Exponents& exps, int nu, const GQ& c);
  void add_term(const Monomial& m, const GQ& c) { add_term(m.exps, m.nu, c); }

  WeightedJet truncated(int weight) const;
  // Declares the stored terms complete through a larger weight. Only valid for
  // jets that are known to be exact polynomials (user input, closed forms).
  WeightedJet promoted(int weight) const;
  // nu-free jet of the coefficient of nu^r, with degree bound weight() - 2r.
  WeightedJet nu_component(int r) const;
  WeightedJet nu_shift(int k) const;
  WeightedJet scaled(const GQ& c) const;
  // Jet with the same variables and weight but no terms.
  WeightedJet zero_like() const { return WeightedJet(vars_, weight_); }

  WeightedJet& operator+=(const WeightedJet& o);
  WeightedJet& operator-=(const WeightedJet& o);
  friend WeightedJet operator+(WeightedJet a, const WeightedJet& b) { return a += b; }
  friend WeightedJet operator-(WeightedJet a, const WeightedJet& b) { return a -= b; }
  // Product truncated to min(Wa, Wb).
  friend WeightedJet operator*(const WeightedJet& a, const WeightedJet& b);
  // Product kept through everything the factors certify: min(Wa + Nb, Wb + Na).
  friend WeightedJet multiply_full(const WeightedJet& a, const WeightedJet& b);
  friend WeightedJet multiply_to(const WeightedJet& a, const WeightedJet& b, int cap);
  friend WeightedJet operator*(const GQ& c, const WeightedJet& a) { return a.scaled(c); }
  WeightedJet operator-() const { return scaled(GQ(-1)); }

  friend bool operator==(const WeightedJet& a, const WeightedJet& b);
  // Agreement of all terms of weight <= min of both weights.
  bool agrees_with(const WeightedJet& o) const;
  // Zero through weight w; requires weight() >= w.
  bool vanishes_through(int w) const;

  // Canonical text: terms sorted by (nu power, exponents), e.g. "-1/2*nu^-1*x^2 + O(w^5)".
  std::string to_string() const;

 private:
  std::shared_ptr<const VarList> vars_;
  std::map<Monomial, GQ> terms_;
  int weight_;
};

WeightedJet derive(const WeightedJet& a, std::size_t var);
WeightedJet derive(const WeightedJet& a, const std::string& var);
WeightedJet nu_derive(const WeightedJet& a);
WeightedJet exp(const WeightedJet& a);
WeightedJet log(const WeightedJet& a);
LaurentScalar eval0(const WeightedJet& a);

// Plan maps every source variable to a target variable or to zero (nullopt).
using SubstitutionPlan = std::map<std::string, std::optional<std::string>>;
WeightedJet substitute(const WeightedJet& a, const SubstitutionPlan& plan, const VarList& target_vars);

// Throws InsufficientTruncation unless a.weight() >= w; returns a truncated to w.
WeightedJet require_weight(const WeightedJet& a, int w, const std::string& what);

}  // namespace oscint
