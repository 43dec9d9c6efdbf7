#pragma once

#include "oscint/jet.hpp"
#include "oscint/laurent.hpp"

#include <map>

namespace oscint {

// Lambda = sum_r nu^r Lambda_r with Lambda_r(f) = sum_alpha c_{r,alpha} d^alpha f(0).
// Rows r <= rmax() are exact. Rows beyond rmax() are unknown but assumed to use
// at most 2r + excess() derivatives; every FOI built by this library has excess 0.
class PointDistribution {
 public:
  using Row = std::map<Exponents, GQ>;

  PointDistribution(VarList vars, int rmax, int excess = 0);
  PointDistribution(std::shared_ptr<const VarList> vars, int rmax, int excess = 0);

  static PointDistribution delta(VarList vars, int rmax);

  const VarList& vars() const { return *vars_; }
  const std::shared_ptr<const VarList>& shared_vars() const { return vars_; }
  std::size_t nvars() const { return vars_->size(); }
  int rmax() const { return rmax_; }
  int excess() const { return excess_; }
  // max(excess(), D_r - 2r over stored rows): bound on derivatives used by any row.
  int effective_excess() const;
  const std::map<int, Row>& rows() const { return rows_; }
  const Row& row(int r) const;
  GQ coeff(int r, const Exponents& alpha) const;
  // Lowest nonempty row, or rmax()+1.
  int nu_low() const;
  // Largest |alpha| stored in row r, or -1.
  int max_derivative(int r) const;

  void add(int r, const Exponents& alpha, const GQ& c);

  // Order through which apply(f) is exact.
  int precision_for(const WeightedJet& f) const;
  // Smallest input weight that makes apply exact through nu^order.
  int required_weight(int order) const;

  LaurentScalar apply(const WeightedJet& f) const;
  // Throws InsufficientTruncation when f does not determine the value through nu^order.
  LaurentScalar apply(const WeightedJet& f, int order) const;

  // f -> Lambda(g f).
  PointDistribution precompose(const WeightedJet& g) const;
  PointDistribution scaled(const LaurentScalar& c) const;
  PointDistribution scaled(const GQ& c) const { return scaled(LaurentScalar(c)); }
  PointDistribution nu_shift(int k) const;
  // sum_r r nu^r Lambda_r
  PointDistribution index_weighted() const;
  PointDistribution truncated(int rmax) const;

  PointDistribution& operator+=(const PointDistribution& o);
  PointDistribution& operator-=(const PointDistribution& o) { return *this += o.scaled(GQ(-1)); }
  friend PointDistribution operator+(PointDistribution a, const PointDistribution& b) { return a += b; }
  friend PointDistribution operator-(PointDistribution a, const PointDistribution& b) { return a -= b; }

  friend bool operator==(const PointDistribution& a, const PointDistribution& b) {
    return a.rmax_ == b.rmax_ && *a.vars_ == *b.vars_ && a.rows_ == b.rows_;
  }
  // Rows agree through min(rmax) of both.
  bool agrees_with(const PointDistribution& o) const;

  std::string to_string() const;

 private:
  std::shared_ptr<const VarList> vars_;
  std::map<int, Row> rows_;
  int rmax_;
  int excess_;
};

// alpha! as an exact integer.
GQ multi_factorial(const Exponents& alpha);
// prod_k binom(alpha_k, beta_k)
GQ multi_binomial(const Exponents& alpha, const Exponents& beta);

}  // namespace oscint
