#pragma once

#include "oscint/gaussian_rational.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace oscint {

// Element of the exterior algebra on at most 64 generators e_0..e_63.
// A blade is a bitmask; e_i ^ e_j with i < j is stored as the mask with bits i, j.
class ExteriorForm {
 public:
  using Blade = std::uint64_t;

  ExteriorForm() = default;
  static ExteriorForm scalar(const GQ& c);
  static ExteriorForm generator(unsigned i);
  static ExteriorForm blade(Blade b, const GQ& c);

  const std::map<Blade, GQ>& terms() const { return terms_; }
  GQ coeff(Blade b) const;
  bool is_zero() const { return terms_.empty(); }

  void add(Blade b, const GQ& c);
  ExteriorForm& operator+=(const ExteriorForm& o);
  ExteriorForm& operator-=(const ExteriorForm& o);
  friend ExteriorForm operator+(ExteriorForm a, const ExteriorForm& b) { return a += b; }
  friend ExteriorForm operator-(ExteriorForm a, const ExteriorForm& b) { return a -= b; }
  ExteriorForm scaled(const GQ& c) const;
  friend bool operator==(const ExteriorForm& a, const ExteriorForm& b) { return a.terms_ == b.terms_; }

  friend ExteriorForm wedge(const ExteriorForm& a, const ExteriorForm& b);
  ExteriorForm power(unsigned k) const;

  std::string to_string() const;

 private:
  std::map<Blade, GQ> terms_;
};

// Sign of moving blade b past blade a when forming a ^ b, or 0 if they share a generator.
int wedge_sign(ExteriorForm::Blade a, ExteriorForm::Blade b);

}  // namespace oscint
