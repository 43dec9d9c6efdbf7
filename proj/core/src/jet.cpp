#include "oscint/jet.hpp"

#include "oscint/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace oscint {

namespace {

constexpr int kWeightLimit = 1 << 20;

void check_weight(int w) {
  if (w > kWeightLimit || w < -kWeightLimit)
    throw Error(ErrorKind::InvalidArgument, "weight bound out of range: " + std::to_string(w));
}

void require_same_vars(const WeightedJet& a, const WeightedJet& b) {
  if (!a.same_vars(b)) throw Error(ErrorKind::VariableMismatch, "operands use different variable sets");
}

}  // namespace

int Monomial::degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }

WeightedJet::WeightedJet(VarList vars, int weight)
    : WeightedJet(std::make_shared<const VarList>(std::move(vars)), weight) {}

WeightedJet::WeightedJet(std::shared_ptr<const VarList> vars, int weight) : vars_(std::move(vars)), weight_(weight) {
  check_weight(weight);
  std::set<std::string> seen(vars_->begin(), vars_->end());
  if (seen.size() != vars_->size()) throw Error(ErrorKind::NameCollision, "duplicate variable name");
}

WeightedJet WeightedJet::constant(const WeightedJet& like, const GQ& c) {
  WeightedJet r(like.vars_, like.weight_);
  r.add_term(Exponents(like.nvars(), 0), 0, c);
  return r;
}

WeightedJet WeightedJet::constant(VarList vars, const GQ& c, int weight) {
  WeightedJet r(std::move(vars), weight);
  r.add_term(Exponents(r.nvars(), 0), 0, c);
  return r;
}

WeightedJet WeightedJet::monomial(VarList vars, Exponents exps, int nu, const GQ& c, int weight) {
  WeightedJet r(std::move(vars), weight);
  if (exps.size() != r.nvars()) throw Error(ErrorKind::VariableMismatch, "exponent vector length differs from variable count");
  r.add_term(exps, nu, c);
  return r;
}

WeightedJet WeightedJet::variable(VarList vars, const std::string& name, int weight) {
  WeightedJet r(std::move(vars), weight);
  Exponents e(r.nvars(), 0);
  e[r.index_of(name)] = 1;
  r.add_term(e, 0, GQ(1));
  return r;
}

WeightedJet WeightedJet::from_scalar(const WeightedJet& like, const LaurentScalar& s) {
  int w = like.weight_;
  if (!s.exact()) w = std::min(w, 2 * s.order() + 1);
  WeightedJet r(like.vars_, w);
  Exponents zero(like.nvars(), 0);
  for (const auto& [p, c] : s.coeffs()) r.add_term(zero, p, c);
  return r;
}

std::size_t WeightedJet::index_of(const std::string& name) const {
  auto it = std::find(vars_->begin(), vars_->end(), name);
  if (it == vars_->end()) throw Error(ErrorKind::UnknownVariable, "'" + name + "'");
  return static_cast<std::size_t>(it - vars_->begin());
}

bool WeightedJet::same_vars(const WeightedJet& o) const { return vars_ == o.vars_ || *vars_ == *o.vars_; }

int WeightedJet::filtration() const {
  if (terms_.empty()) return weight_ + 1;
  int n = kWeightLimit;
  for (const auto& [m, c] : terms_) n = std::min(n, m.weight());
  return n;
}

std::optional<int> WeightedJet::min_nu() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.nu;
}

std::optional<int> WeightedJet::max_nu() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first.nu;
}

GQ WeightedJet::coeff(const Exponents& exps, int nu) const {
  auto it = terms_.find(Monomial{nu, exps});
  return it == terms_.end() ? GQ(0) : it->second;
}

void WeightedJet::add_term(const Exponents& exps, int nu, const GQ& c) {
  if (c.is_zero()) return;
  if (exps.size() != nvars()) throw Error(ErrorKind::VariableMismatch, "exponent vector length differs from variable count");
  Monomial m{nu, exps};
  if (m.weight() > weight_) return;
  auto [it, inserted] = terms_.emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

WeightedJet WeightedJet::truncated(int weight) const {
  WeightedJet r(vars_, std::min(weight, weight_));
  for (const auto& [m, c] : terms_)
    if (m.weight() <= r.weight_) r.terms_.emplace_hint(r.terms_.end(), m, c);
  return r;
}

WeightedJet WeightedJet::promoted(int weight) const {
  WeightedJet r = *this;
  check_weight(weight);
  r.weight_ = std::max(weight_, weight);
  return r;
}

WeightedJet WeightedJet::nu_component(int r) const {
  WeightedJet out(vars_, weight_ - 2 * r);
  for (const auto& [m, c] : terms_)
    if (m.nu == r) out.terms_.emplace(Monomial{0, m.exps}, c);
  return out;
}

WeightedJet WeightedJet::nu_shift(int k) const {
  WeightedJet out(vars_, weight_ + 2 * k);
  for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), Monomial{m.nu + k, m.exps}, c);
  return out;
}

WeightedJet WeightedJet::scaled(const GQ& c) const {
  WeightedJet out(vars_, weight_);
  if (c.is_zero()) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, v * c);
  return out;
}

WeightedJet& WeightedJet::operator+=(const WeightedJet& o) {
  require_same_vars(*this, o);
  if (o.weight_ < weight_) *this = truncated(o.weight_);
  for (const auto& [m, c] : o.terms_) add_term(m.exps, m.nu, c);
  return *this;
}

WeightedJet& WeightedJet::operator-=(const WeightedJet& o) {
  require_same_vars(*this, o);
  if (o.weight_ < weight_) *this = truncated(o.weight_);
  for (const auto& [m, c] : o.terms_) add_term(m.exps, m.nu, -c);
  return *this;
}

WeightedJet operator*(const WeightedJet& a, const WeightedJet& b) {
  return multiply_to(a, b, std::min(a.weight_, b.weight_));
}

WeightedJet multiply_full(const WeightedJet& a, const WeightedJet& b) { return multiply_to(a, b, kWeightLimit); }

WeightedJet multiply_to(const WeightedJet& a, const WeightedJet& b, int cap) {
  require_same_vars(a, b);
  int na = a.filtration(), nb = b.filtration();
  // Unknown terms of a (weight > Wa) meet b at weight > Wa + Nb, and symmetrically.
  int w = std::min({cap, a.weight_ + nb, b.weight_ + na});
  WeightedJet out(a.vars_, w);
  if (a.terms_.empty() || b.terms_.empty()) return out;
  std::vector<std::pair<int, const std::pair<const Monomial, GQ>*>> bs;
  bs.reserve(b.terms_.size());
  for (const auto& t : b.terms_) bs.emplace_back(t.first.weight(), &t);
  std::sort(bs.begin(), bs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  const std::size_t n = a.nvars();
  Monomial m;
  m.exps.resize(n);
  for (const auto& [ma, ca] : a.terms_) {
    int wa = ma.weight();
    for (const auto& [wb, tb] : bs) {
      if (wa + wb > w) break;
      const Monomial& mb = tb->first;
      m.nu = ma.nu + mb.nu;
      for (std::size_t k = 0; k < n; ++k) m.exps[k] = ma.exps[k] + mb.exps[k];
      GQ c = ca * tb->second;
      auto [it, inserted] = out.terms_.emplace(m, c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) out.terms_.erase(it);
      }
    }
  }
  return out;
}

bool operator==(const WeightedJet& a, const WeightedJet& b) {
  return a.weight_ == b.weight_ && a.same_vars(b) && a.terms_ == b.terms_;
}

bool WeightedJet::agrees_with(const WeightedJet& o) const {
  if (!same_vars(o)) return false;
  int w = std::min(weight_, o.weight_);
  return truncated(w).terms_ == o.truncated(w).terms_;
}

bool WeightedJet::vanishes_through(int w) const {
  if (weight_ < w) return false;
  return std::all_of(terms_.begin(), terms_.end(), [w](const auto& t) { return t.first.weight() > w; });
}

std::string WeightedJet::to_string() const {
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::vector<std::string> factors;
    if (m.nu != 0) factors.push_back(m.nu == 1 ? "nu" : "nu^" + std::to_string(m.nu));
    for (std::size_t k = 0; k < m.exps.size(); ++k) {
      if (m.exps[k] == 0) continue;
      factors.push_back(m.exps[k] == 1 ? (*vars_)[k] : (*vars_)[k] + "^" + std::to_string(m.exps[k]));
    }
    std::string cs = c.to_string();
    bool negative = c.is_real() && sgn(c.re()) < 0;
    if (negative) cs = cs.substr(1);
    if (!c.is_real() && sgn(c.re()) != 0) cs = "(" + cs + ")";
    std::string term;
    if (factors.empty()) {
      term = cs;
    } else {
      std::string body;
      for (const auto& f : factors) body += (body.empty() ? "" : "*") + f;
      term = cs == "1" ? body : cs + "*" + body;
    }
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  if (out.empty()) out = "0";
  out += " + O(w^" + std::to_string(weight_ + 1) + ")";
  return out;
}

WeightedJet derive(const WeightedJet& a, std::size_t var) {
  if (var >= a.nvars()) throw Error(ErrorKind::UnknownVariable, "index " + std::to_string(var));
  WeightedJet out(a.shared_vars(), a.weight() - 1);
  for (const auto& [m, c] : a.terms()) {
    int e = m.exps[var];
    if (e == 0) continue;
    Exponents x = m.exps;
    x[var] = e - 1;
    out.add_term(x, m.nu, c * GQ(e));
  }
  return out;
}

WeightedJet derive(const WeightedJet& a, const std::string& var) { return derive(a, a.index_of(var)); }

WeightedJet nu_derive(const WeightedJet& a) {
  WeightedJet out(a.shared_vars(), a.weight() - 2);
  for (const auto& [m, c] : a.terms())
    if (m.nu != 0) out.add_term(m.exps, m.nu - 1, c * GQ(m.nu));
  return out;
}

WeightedJet exp(const WeightedJet& a) {
  int n = a.filtration();
  if (!a.empty() && n < 1)
    throw Error(ErrorKind::FiltrationTooLow, "exp needs filtration degree >= 1, got " + std::to_string(n));
  WeightedJet result = WeightedJet::constant(a, GQ(1));
  WeightedJet power = result;
  for (long k = 1;; ++k) {
    power = power * a;
    power = power.scaled(GQ::rational(1, k));
    if (power.empty()) break;
    result += power;
  }
  return result.truncated(a.weight());
}

WeightedJet log(const WeightedJet& a) {
  Exponents zero(a.nvars(), 0);
  GQ c0 = a.coeff(zero, 0);
  if (!(c0 == GQ(1))) throw Error(ErrorKind::BadConstantTerm, "log needs constant term 1, got " + c0.to_string());
  WeightedJet b = a - WeightedJet::constant(a, GQ(1));
  int n = b.filtration();
  if (!b.empty() && n < 1)
    throw Error(ErrorKind::FiltrationTooLow, "log needs a - 1 of filtration degree >= 1, got " + std::to_string(n));
  WeightedJet result = a.zero_like();
  WeightedJet power = WeightedJet::constant(a, GQ(1));
  for (long k = 1;; ++k) {
    power = power * b;
    if (power.empty()) break;
    result += power.scaled(GQ::rational(k % 2 == 1 ? 1 : -1, k));
  }
  return result.truncated(a.weight());
}

LaurentScalar eval0(const WeightedJet& a) {
  LaurentScalar s = LaurentScalar::zero(floor_div(a.weight(), 2));
  for (const auto& [m, c] : a.terms())
    if (m.degree() == 0) s.add_term(m.nu, c);
  return s;
}

WeightedJet substitute(const WeightedJet& a, const SubstitutionPlan& plan, const VarList& target_vars) {
  WeightedJet out(target_vars, a.weight());
  std::vector<std::optional<std::size_t>> map(a.nvars());
  for (std::size_t k = 0; k < a.nvars(); ++k) {
    auto it = plan.find(a.vars()[k]);
    if (it == plan.end()) throw Error(ErrorKind::InvalidArgument, "substitution plan misses variable '" + a.vars()[k] + "'");
    if (it->second) map[k] = out.index_of(*it->second);
  }
  for (const auto& [name, target] : plan)
    if (std::find(a.vars().begin(), a.vars().end(), name) == a.vars().end())
      throw Error(ErrorKind::UnknownVariable, "substitution plan names '" + name + "'");
  Exponents x(target_vars.size());
  for (const auto& [m, c] : a.terms()) {
    std::fill(x.begin(), x.end(), 0);
    bool vanishes = false;
    for (std::size_t k = 0; k < m.exps.size(); ++k) {
      if (m.exps[k] == 0) continue;
      if (!map[k]) {
        vanishes = true;
        break;
      }
      x[*map[k]] += m.exps[k];
    }
    if (!vanishes) out.add_term(x, m.nu, c);
  }
  return out;
}

WeightedJet require_weight(const WeightedJet& a, int w, const std::string& what) {
  if (a.weight() < w) throw InsufficientTruncation(what, w, a.weight());
  return a.truncated(w);
}

}  // namespace oscint
