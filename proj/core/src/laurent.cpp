#include "oscint/laurent.hpp"

#include "oscint/error.hpp"

#include <algorithm>

namespace oscint {

int saturating_add(int a, int b) {
  long s = static_cast<long>(a) + b;
  if (s >= kExactOrder) return kExactOrder;
  if (s <= -kExactOrder) return -kExactOrder;
  return static_cast<int>(s);
}

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

LaurentScalar::LaurentScalar(GQ c, int order) : order_(std::min(order, kExactOrder)) {
  if (0 <= order_ && !c.is_zero()) coeffs_.emplace(0, std::move(c));
}

LaurentScalar LaurentScalar::monomial(GQ c, int power, int order) {
  LaurentScalar s = zero(order);
  s.add_term(power, c);
  return s;
}

std::optional<int> LaurentScalar::nu_low() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.begin()->first;
}

int LaurentScalar::valuation() const {
  if (coeffs_.empty()) return saturating_add(order_, 1);
  return coeffs_.begin()->first;
}

GQ LaurentScalar::coeff(int power) const {
  auto it = coeffs_.find(power);
  return it == coeffs_.end() ? GQ(0) : it->second;
}

void LaurentScalar::add_term(int power, const GQ& c) {
  if (power > order_ || c.is_zero()) return;
  auto [it, inserted] = coeffs_.emplace(power, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

LaurentScalar LaurentScalar::truncated(int order) const {
  LaurentScalar r = zero(std::min(order, order_));
  for (const auto& [p, c] : coeffs_)
    if (p <= r.order_) r.coeffs_.emplace(p, c);
  return r;
}

LaurentScalar LaurentScalar::nu_derive() const {
  LaurentScalar r = zero(exact() ? kExactOrder : order_ - 1);
  for (const auto& [p, c] : coeffs_)
    if (p != 0) r.add_term(p - 1, c * GQ(p));
  return r;
}

LaurentScalar LaurentScalar::shifted(int k) const {
  LaurentScalar r = zero(saturating_add(order_, k));
  for (const auto& [p, c] : coeffs_) r.coeffs_.emplace(p + k, c);
  return r;
}

LaurentScalar& LaurentScalar::operator+=(const LaurentScalar& o) {
  order_ = std::min(order_, o.order_);
  for (auto it = coeffs_.begin(); it != coeffs_.end();) it = it->first > order_ ? coeffs_.erase(it) : std::next(it);
  for (const auto& [p, c] : o.coeffs_) add_term(p, c);
  return *this;
}

LaurentScalar& LaurentScalar::operator-=(const LaurentScalar& o) { return *this += -o; }

LaurentScalar LaurentScalar::operator-() const {
  LaurentScalar r = *this;
  for (auto& [p, c] : r.coeffs_) c = -c;
  return r;
}

LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
  // (a + O(nu^{pa+1})) (b + O(nu^{pb+1})) is known through min(pa + vb, pb + va).
  int order = std::min(saturating_add(a.order_, b.valuation()), saturating_add(b.order_, a.valuation()));
  LaurentScalar r = LaurentScalar::zero(order);
  for (const auto& [pa, ca] : a.coeffs_)
    for (const auto& [pb, cb] : b.coeffs_)
      if (pa + pb <= order) r.add_term(pa + pb, ca * cb);
  return r;
}

LaurentScalar operator/(const LaurentScalar& a, const LaurentScalar& b) {
  if (b.coeffs_.empty())
    throw Error(ErrorKind::NonUnitLeading, "divisor vanishes through its truncation order " + std::to_string(b.order_));
  int vb = b.coeffs_.begin()->first;
  GQ lead_inv = b.coeffs_.begin()->second.inverse();
  LaurentScalar inv;
  if (b.coeffs_.size() == 1 && b.exact()) {
    inv = LaurentScalar::monomial(lead_inv, -vb);
  } else {
    // 1/b = nu^{-vb} (d_0 + d_1 nu + ...); b known through relative order rel.
    int rel;
    if (!b.exact()) {
      rel = b.order_ - vb;
    } else if (!a.exact()) {
      rel = a.order_ - a.valuation();
    } else {
      throw Error(ErrorKind::InvalidArgument, "exact division by a non-monomial series needs a truncation order");
    }
    inv = LaurentScalar::zero(rel - vb);
    std::map<int, GQ> d;
    for (int j = 0; j <= rel; ++j) {
      GQ s = j == 0 ? GQ(1) : GQ(0);
      for (int k = 1; k <= j; ++k) {
        auto bit = b.coeffs_.find(vb + k);
        auto dit = d.find(j - k);
        if (bit != b.coeffs_.end() && dit != d.end()) s -= bit->second * dit->second;
      }
      GQ dj = s * lead_inv;
      if (!dj.is_zero()) d.emplace(j, dj);
    }
    for (const auto& [j, c] : d) inv.add_term(j - vb, c);
  }
  return a * inv;
}

bool LaurentScalar::agrees_with(const LaurentScalar& o) const {
  int order = std::min(order_, o.order_);
  return truncated(order).coeffs_ == o.truncated(order).coeffs_;
}

bool LaurentScalar::vanishes_through(int power) const {
  if (order_ < power) return false;
  return coeffs_.empty() || coeffs_.begin()->first > power;
}

std::string LaurentScalar::to_string() const {
  std::string out;
  for (const auto& [p, c] : coeffs_) {
    std::string cs = c.to_string();
    bool compound = !c.is_real() && sgn(c.re()) != 0;
    if (compound) cs = "(" + cs + ")";
    std::string term;
    if (p == 0) {
      term = cs;
    } else {
      std::string nu = p == 1 ? "nu" : "nu^" + std::to_string(p);
      if (c == GQ(1)) term = nu;
      else if (c == GQ(-1)) term = "-" + nu;
      else term = cs + "*" + nu;
    }
    if (out.empty()) out = term;
    else if (term.front() == '-') out += " - " + term.substr(1);
    else out += " + " + term;
  }
  if (out.empty()) out = "0";
  if (!exact()) {
    int next = order_ + 1;
    out += " + O(" + (next == 1 ? std::string("nu") : "nu^" + std::to_string(next)) + ")";
  }
  return out;
}

}  // namespace oscint
