#pragma once

#include <complex>
#include <gmpxx.h>
#include <string>
#include <string_view>

namespace oscint {

// Exact element of Q(i). Both parts are kept canonical by gmp.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im = 0);

  static GaussianRational i() { return GaussianRational(0, 1); }
  static GaussianRational rational(long num, long den);

  // Accepts "p", "-p/q"; a leading U+2212 minus is treated as '-'.
  static mpq_class parse_rational(std::string_view text);
  // Accepts the canonical rendering produced by to_string().
  static GaussianRational parse(std::string_view text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  GaussianRational inverse() const;
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  // "p/q", "r/s i" or "p/q+r/s i"; zero renders as "0".
  std::string to_string() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

using GQ = GaussianRational;

std::string rational_to_string(const mpq_class& q);

}  // namespace oscint
