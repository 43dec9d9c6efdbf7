#include "oscint/distribution.hpp"

#include "oscint/error.hpp"

#include <algorithm>
#include <numeric>

namespace oscint {

namespace {

int degree(const Exponents& a) { return std::accumulate(a.begin(), a.end(), 0); }

bool dominated(const Exponents& beta, const Exponents& alpha) {
  for (std::size_t k = 0; k < alpha.size(); ++k)
    if (beta[k] > alpha[k]) return false;
  return true;
}

}  // namespace

GQ multi_factorial(const Exponents& alpha) {
  mpz_class f = 1;
  for (int a : alpha)
    for (int j = 2; j <= a; ++j) f *= j;
  return GQ(mpq_class(f));
}

GQ multi_binomial(const Exponents& alpha, const Exponents& beta) {
  mpz_class b = 1;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(alpha[k]), static_cast<unsigned long>(beta[k]));
    b *= c;
  }
  return GQ(mpq_class(b));
}

PointDistribution::PointDistribution(VarList vars, int rmax, int excess)
    : PointDistribution(std::make_shared<const VarList>(std::move(vars)), rmax, excess) {}

PointDistribution::PointDistribution(std::shared_ptr<const VarList> vars, int rmax, int excess)
    : vars_(std::move(vars)), rmax_(rmax), excess_(excess) {}

PointDistribution PointDistribution::delta(VarList vars, int rmax) {
  PointDistribution d(std::move(vars), rmax);
  d.add(0, Exponents(d.nvars(), 0), GQ(1));
  return d;
}

const PointDistribution::Row& PointDistribution::row(int r) const {
  static const Row empty;
  auto it = rows_.find(r);
  return it == rows_.end() ? empty : it->second;
}

GQ PointDistribution::coeff(int r, const Exponents& alpha) const {
  const Row& rw = row(r);
  auto it = rw.find(alpha);
  return it == rw.end() ? GQ(0) : it->second;
}

int PointDistribution::nu_low() const { return rows_.empty() ? rmax_ + 1 : rows_.begin()->first; }

int PointDistribution::max_derivative(int r) const {
  int d = -1;
  for (const auto& [alpha, c] : row(r)) d = std::max(d, degree(alpha));
  return d;
}

void PointDistribution::add(int r, const Exponents& alpha, const GQ& c) {
  if (alpha.size() != nvars()) throw Error(ErrorKind::VariableMismatch, "multi-index length differs from dimension");
  if (r > rmax_ || c.is_zero()) return;
  Row& rw = rows_[r];
  auto [it, inserted] = rw.emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) rw.erase(it);
  }
  if (rw.empty()) rows_.erase(r);
}

int PointDistribution::effective_excess() const {
  int e = excess_;
  for (const auto& [r, rw] : rows_) e = std::max(e, max_derivative(r) - 2 * r);
  return e;
}

int PointDistribution::precision_for(const WeightedJet& f) const {
  // unknown terms of f through unknown rows
  int p = floor_div(f.weight() - effective_excess(), 2);
  // known terms of f through unknown rows
  if (auto s = f.min_nu()) p = std::min(p, rmax_ + *s);
  // unknown terms of f through known rows
  for (const auto& [r, rw] : rows_) {
    if (r > rmax_) break;
    p = std::min(p, r + floor_div(f.weight() - max_derivative(r), 2));
  }
  return p;
}

int PointDistribution::required_weight(int order) const {
  int w = 2 * order + effective_excess();
  for (const auto& [r, rw] : rows_) w = std::max(w, max_derivative(r) + 2 * (order - r));
  return w;
}

LaurentScalar PointDistribution::apply(const WeightedJet& f) const {
  if (*f.shared_vars() != *vars_ && f.shared_vars() != vars_)
    throw Error(ErrorKind::VariableMismatch, "distribution and amplitude use different variables");
  int p = precision_for(f);
  LaurentScalar out = LaurentScalar::zero(p);
  for (const auto& [m, c] : f.terms()) {
    GQ fact;
    bool have_fact = false;
    for (const auto& [r, rw] : rows_) {
      if (r + m.nu > p) break;
      auto it = rw.find(m.exps);
      if (it == rw.end()) continue;
      if (!have_fact) {
        fact = multi_factorial(m.exps) * c;
        have_fact = true;
      }
      out.add_term(r + m.nu, it->second * fact);
    }
  }
  return out;
}

LaurentScalar PointDistribution::apply(const WeightedJet& f, int order) const {
  int p = precision_for(f);
  if (p < order) {
    if (rmax_ + f.min_nu().value_or(0) < order)
      throw InsufficientTruncation("distribution rows do not reach the requested order", order - f.min_nu().value_or(0), rmax_);
    throw InsufficientTruncation("amplitude weight too low for the requested order", required_weight(order), f.weight());
  }
  return apply(f).truncated(order);
}

PointDistribution PointDistribution::precompose(const WeightedJet& g) const {
  PointDistribution out(vars_, precision_for(g), g.empty() ? effective_excess() : effective_excess() - g.filtration());
  for (const auto& [r, rw] : rows_) {
    for (const auto& [m, gc] : g.terms()) {
      int k = r + m.nu;
      if (k > out.rmax_) continue;
      // g term gc x^delta contributes to d^alpha (g f)(0) the piece
      // binom(alpha, delta) delta! gc d^{alpha-delta} f(0)
      GQ dfact = multi_factorial(m.exps) * gc;
      for (const auto& [alpha, c] : rw) {
        if (!dominated(m.exps, alpha)) continue;
        Exponents gamma(alpha.size());
        for (std::size_t q = 0; q < alpha.size(); ++q) gamma[q] = alpha[q] - m.exps[q];
        out.add(k, gamma, c * multi_binomial(alpha, m.exps) * dfact);
      }
    }
  }
  return out;
}

PointDistribution PointDistribution::scaled(const LaurentScalar& c) const {
  int v = c.valuation();
  int rmax = std::min(saturating_add(rmax_, v), saturating_add(c.order(), nu_low()));
  int e = effective_excess();
  PointDistribution out(vars_, rmax, c.is_zero() ? e : e - 2 * v);
  for (const auto& [p, cp] : c.coeffs())
    for (const auto& [r, rw] : rows_)
      for (const auto& [alpha, a] : rw) out.add(r + p, alpha, a * cp);
  return out;
}

PointDistribution PointDistribution::nu_shift(int k) const {
  PointDistribution out(vars_, rmax_ + k, effective_excess() - 2 * k);
  for (const auto& [r, rw] : rows_) out.rows_.emplace(r + k, rw);
  return out;
}

PointDistribution PointDistribution::index_weighted() const {
  PointDistribution out(vars_, rmax_, excess_);
  for (const auto& [r, rw] : rows_)
    for (const auto& [alpha, c] : rw) out.add(r, alpha, c * GQ(r));
  return out;
}

PointDistribution PointDistribution::truncated(int rmax) const {
  PointDistribution out(vars_, std::min(rmax, rmax_), excess_);
  for (const auto& [r, rw] : rows_)
    if (r <= out.rmax_) out.rows_.emplace(r, rw);
  return out;
}

PointDistribution& PointDistribution::operator+=(const PointDistribution& o) {
  if (*vars_ != *o.vars_) throw Error(ErrorKind::VariableMismatch, "distributions use different variables");
  rmax_ = std::min(rmax_, o.rmax_);
  excess_ = std::max(effective_excess(), o.effective_excess());
  for (auto it = rows_.begin(); it != rows_.end();) it = it->first > rmax_ ? rows_.erase(it) : std::next(it);
  for (const auto& [r, rw] : o.rows_)
    for (const auto& [alpha, c] : rw) add(r, alpha, c);
  return *this;
}

bool PointDistribution::agrees_with(const PointDistribution& o) const {
  int r = std::min(rmax_, o.rmax_);
  return *vars_ == *o.vars_ && truncated(r).rows_ == o.truncated(r).rows_;
}

std::string PointDistribution::to_string() const {
  std::string out;
  for (const auto& [r, rw] : rows_) {
    out += "nu^" + std::to_string(r) + ":";
    for (const auto& [alpha, c] : rw) {
      std::string d;
      for (std::size_t k = 0; k < alpha.size(); ++k)
        if (alpha[k] > 0) d += "d_" + (*vars_)[k] + (alpha[k] > 1 ? "^" + std::to_string(alpha[k]) : "");
      out += " [" + c.to_string() + "]" + (d.empty() ? "1" : d);
    }
    out += "\n";
  }
  out += "rmax " + std::to_string(rmax_) + "\n";
  return out;
}

}  // namespace oscint
