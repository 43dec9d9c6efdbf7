#include "oscint/exterior.hpp"

#include "oscint/error.hpp"

#include <bit>

namespace oscint {

int wedge_sign(ExteriorForm::Blade a, ExteriorForm::Blade b) {
  if (a & b) return 0;
  // each generator j of b must pass every generator of a with a larger index
  int swaps = 0;
  while (b) {
    unsigned j = static_cast<unsigned>(std::countr_zero(b));
    ExteriorForm::Blade above = j >= 63 ? 0 : (a >> (j + 1));
    swaps += std::popcount(above);
    b &= b - 1;
  }
  return swaps % 2 == 0 ? 1 : -1;
}

ExteriorForm ExteriorForm::scalar(const GQ& c) { return blade(0, c); }

ExteriorForm ExteriorForm::generator(unsigned i) {
  if (i >= 64) throw Error(ErrorKind::InvalidArgument, "exterior algebra supports at most 64 generators");
  return blade(Blade{1} << i, GQ(1));
}

ExteriorForm ExteriorForm::blade(Blade b, const GQ& c) {
  ExteriorForm f;
  f.add(b, c);
  return f;
}

GQ ExteriorForm::coeff(Blade b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? GQ(0) : it->second;
}

void ExteriorForm::add(Blade b, const GQ& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(b, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExteriorForm& ExteriorForm::operator+=(const ExteriorForm& o) {
  for (const auto& [b, c] : o.terms_) add(b, c);
  return *this;
}

ExteriorForm& ExteriorForm::operator-=(const ExteriorForm& o) {
  for (const auto& [b, c] : o.terms_) add(b, -c);
  return *this;
}

ExteriorForm ExteriorForm::scaled(const GQ& c) const {
  ExteriorForm f;
  if (c.is_zero()) return f;
  for (const auto& [b, v] : terms_) f.terms_.emplace(b, v * c);
  return f;
}

ExteriorForm wedge(const ExteriorForm& a, const ExteriorForm& b) {
  ExteriorForm out;
  for (const auto& [ba, ca] : a.terms_)
    for (const auto& [bb, cb] : b.terms_) {
      int s = wedge_sign(ba, bb);
      if (s == 0) continue;
      GQ c = ca * cb;
      out.add(ba | bb, s > 0 ? c : -c);
    }
  return out;
}

ExteriorForm ExteriorForm::power(unsigned k) const {
  ExteriorForm out = scalar(GQ(1));
  for (unsigned j = 0; j < k; ++j) out = wedge(out, *this);
  return out;
}

std::string ExteriorForm::to_string() const {
  std::string out;
  for (const auto& [b, c] : terms_) {
    std::string e;
    for (unsigned j = 0; j < 64; ++j)
      if (b >> j & 1) e += (e.empty() ? "e" : "^e") + std::to_string(j);
    out += (out.empty() ? "" : " + ") + std::string("(") + c.to_string() + ")" + (e.empty() ? "" : "*" + e);
  }
  return out.empty() ? "0" : out;
}

}  // namespace oscint
