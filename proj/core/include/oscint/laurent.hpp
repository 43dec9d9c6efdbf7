#pragma once

#include "oscint/gaussian_rational.hpp"

#include <map>
#include <optional>
#include <string>

namespace oscint {

// Marker order for values known to every order.
inline constexpr int kExactOrder = 1 << 28;

// Truncated element of C((nu)): coefficients are exact for every power <= order().
class LaurentScalar {
 public:
  LaurentScalar() = default;
  LaurentScalar(GQ c, int order = kExactOrder);  // NOLINT(google-explicit-constructor)
  LaurentScalar(long c) : LaurentScalar(GQ(c)) {}  // NOLINT(google-explicit-constructor)

  static LaurentScalar monomial(GQ c, int power, int order = kExactOrder);
  static LaurentScalar zero(int order) { return LaurentScalar(GQ(0), order); }

  int order() const { return order_; }
  bool exact() const { return order_ >= kExactOrder; }
  // Lowest stored power, if any coefficient is stored.
  std::optional<int> nu_low() const;
  // Valuation as certified by the truncation: nu_low(), or order()+1 when nothing is stored.
  int valuation() const;
  const std::map<int, GQ>& coeffs() const { return coeffs_; }
  GQ coeff(int power) const;
  bool is_zero() const { return coeffs_.empty(); }

  void add_term(int power, const GQ& c);
  LaurentScalar truncated(int order) const;
  LaurentScalar nu_derive() const;
  LaurentScalar shifted(int k) const;  // multiply by nu^k

  LaurentScalar& operator+=(const LaurentScalar& o);
  LaurentScalar& operator-=(const LaurentScalar& o);
  friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar& b) { return a += b; }
  friend LaurentScalar operator-(LaurentScalar a, const LaurentScalar& b) { return a -= b; }
  friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b);
  friend LaurentScalar operator/(const LaurentScalar& a, const LaurentScalar& b);
  LaurentScalar operator-() const;

  // Structural equality: same order and coefficients.
  friend bool operator==(const LaurentScalar& a, const LaurentScalar& b) {
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }
  // Agreement on all powers <= min of the two orders.
  bool agrees_with(const LaurentScalar& o) const;
  // Zero through the given power; requires order() >= power.
  bool vanishes_through(int power) const;

  // "1 + 5/24*nu + O(nu^2)"
  std::string to_string() const;

 private:
  std::map<int, GQ> coeffs_;
  int order_ = kExactOrder;
};

int saturating_add(int a, int b);
int floor_div(int a, int b);

}  // namespace oscint
