#include "oscint/diff_operator.hpp"

#include "oscint/error.hpp"

#include <algorithm>
#include <numeric>

namespace oscint {

DiffOperator::DiffOperator(VarList vars, int weight)
    : DiffOperator(std::make_shared<const VarList>(std::move(vars)), weight) {}

DiffOperator::DiffOperator(std::shared_ptr<const VarList> vars, int weight) : vars_(std::move(vars)), weight_(weight) {}

DiffOperator DiffOperator::identity(VarList vars, int weight) {
  DiffOperator d(std::move(vars), weight);
  WeightedJet one = WeightedJet::constant(*d.vars_, GQ(1), weight);
  d.add_term(0, Exponents(d.vars_->size(), 0), one);
  return d;
}

DiffOperator DiffOperator::multiplication(const WeightedJet& f) {
  DiffOperator d(f.shared_vars(), f.weight());
  d.add_term(0, Exponents(f.nvars(), 0), f);
  return d;
}

DiffOperator DiffOperator::derivative(VarList vars, const std::string& var, int weight) {
  DiffOperator d(std::move(vars), weight);
  WeightedJet one = WeightedJet::constant(*d.vars_, GQ(1), weight + 1);
  Exponents e(d.vars_->size(), 0);
  e[one.index_of(var)] = 1;
  d.add_term(0, e, one);
  return d;
}

int DiffOperator::filtration() const {
  int n = weight_ + 1;
  for (const auto& [key, c] : terms_) {
    int deg = std::accumulate(key.second.begin(), key.second.end(), 0);
    n = std::min(n, 2 * key.first + c.filtration() - deg);
  }
  return n;
}

void DiffOperator::add_term(int nu, const Exponents& deriv, const WeightedJet& coeff) {
  if (deriv.size() != vars_->size() || !coeff.same_vars(WeightedJet(vars_, 0)))
    throw Error(ErrorKind::VariableMismatch, "operator term uses a different variable set");
  // unknown coefficient terms shift by more than 2 nu + W_c - |deriv|
  weight_ = std::min(weight_, 2 * nu + coeff.weight() - std::accumulate(deriv.begin(), deriv.end(), 0));
  Key key{nu, deriv};
  auto it = terms_.find(key);
  if (it == terms_.end()) terms_.emplace(std::move(key), coeff);
  else it->second += coeff;
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  weight_ = std::min(weight_, o.weight_);
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
  return *this;
}

DiffOperator DiffOperator::scaled(const GQ& c) const {
  DiffOperator d(vars_, weight_);
  for (const auto& [key, coeff] : terms_) d.terms_.emplace(key, coeff.scaled(c));
  return d;
}

std::string DiffOperator::to_string() const {
  std::string out;
  for (const auto& [key, c] : terms_) {
    if (c.empty()) continue;
    std::string d;
    for (std::size_t k = 0; k < key.second.size(); ++k) {
      if (key.second[k] == 0) continue;
      d += "*d_" + (*vars_)[k] + (key.second[k] > 1 ? "^" + std::to_string(key.second[k]) : "");
    }
    std::string nu = key.first == 0 ? "" : (key.first == 1 ? "nu*" : "nu^" + std::to_string(key.first) + "*");
    std::string coeff = c.to_string();
    coeff = coeff.substr(0, coeff.rfind(" + O("));
    out += (out.empty() ? "" : " + ") + nu + "(" + coeff + ")" + d;
  }
  return out.empty() ? "0" : out;
}

WeightedJet derive_multi(const WeightedJet& f, const Exponents& beta) {
  WeightedJet out = f;
  for (std::size_t k = 0; k < beta.size(); ++k)
    for (int j = 0; j < beta[k]; ++j) out = derive(out, k);
  return out;
}

WeightedJet op_apply(const DiffOperator& d, const WeightedJet& f) {
  if (!f.same_vars(WeightedJet(d.shared_vars(), 0)))
    throw Error(ErrorKind::VariableMismatch, "operator and jet use different variable sets");
  int w = std::min(d.weight() + f.filtration(), f.weight() + d.filtration());
  WeightedJet out(f.shared_vars(), w);
  for (const auto& [key, c] : d.terms()) {
    WeightedJet g = derive_multi(f, key.second);
    out += multiply_full(c, g).nu_shift(key.first);
  }
  return out.truncated(w);
}

}  // namespace oscint
