#include "oscint/gaussian_rational.hpp"

#include "oscint/error.hpp"

#include <cctype>

namespace oscint {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::VariableMismatch: return "variable-set mismatch";
    case ErrorKind::UnknownVariable: return "unknown variable";
    case ErrorKind::FiltrationTooLow: return "filtration degree too low";
    case ErrorKind::BadConstantTerm: return "constant term must be 1";
    case ErrorKind::NameCollision: return "target-name collision";
    case ErrorKind::InsufficientTruncation: return "insufficient truncation";
    case ErrorKind::SingularMatrix: return "singular matrix";
    case ErrorKind::SingularHessian: return "singular Hessian";
    case ErrorKind::NonzeroCriticalValue: return "nonzero critical value";
    case ErrorKind::NonzeroGradient: return "nonzero gradient at origin";
    case ErrorKind::NotSecondOrder: return "first-order row is not of second order";
    case ErrorKind::NonUnitLeading: return "division by non-unit leading coefficient";
    case ErrorKind::NotHermitianType: return "Hessian not of Hermitian type";
    case ErrorKind::NotRealData: return "phase data not real";
    case ErrorKind::InconsistentSystem: return "inconsistent linear system";
    case ErrorKind::IntegrabilityFailure: return "integrability failure";
    case ErrorKind::QuadratureFailure: return "quadrature did not converge";
    case ErrorKind::PositiveDirection: return "positive-definite direction detected";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::Parse: return "parse error";
  }
  return "error";
}

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::rational(long num, long den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return GaussianRational(q);
}

mpq_class GaussianRational::parse_rational(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (std::size_t k = 0; k < text.size(); ++k) {
    // U+2212 MINUS SIGN is E2 88 92 in UTF-8.
    if (k + 2 < text.size() && static_cast<unsigned char>(text[k]) == 0xE2 &&
        static_cast<unsigned char>(text[k + 1]) == 0x88 && static_cast<unsigned char>(text[k + 2]) == 0x92) {
      s.push_back('-');
      k += 2;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(text[k]))) s.push_back(text[k]);
  }
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  if (s.empty()) throw Error(ErrorKind::Parse, "empty rational");
  std::size_t start = s.front() == '-' ? 1 : 0;
  bool slash = false;
  bool digits_before = false, digits_after = false;
  for (std::size_t k = start; k < s.size(); ++k) {
    char c = s[k];
    if (c == '/') {
      if (slash) throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
      slash = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      (slash ? digits_after : digits_before) = true;
    } else {
      throw Error(ErrorKind::Parse, "not an exact rational '" + std::string(text) + "'");
    }
  }
  if (!digits_before || (slash && !digits_after))
    throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
  if (sgn(q.get_den()) == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.size() >= 2 && s.back() == 'i' && s[s.size() - 2] == ' ') {
    std::string body = s.substr(0, s.size() - 2);
    // split at the last sign that is not the first character
    std::size_t cut = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if (body[k] == '+' || body[k] == '-') {
        cut = k;
        break;
      }
    }
    if (cut == std::string::npos) return GaussianRational(0, parse_rational(body));
    return GaussianRational(parse_rational(body.substr(0, cut)), parse_rational(body.substr(cut)));
  }
  return GaussianRational(parse_rational(s));
}

GaussianRational GaussianRational::inverse() const {
  mpq_class n = re_ * re_ + im_ * im_;
  if (sgn(n) == 0) throw Error(ErrorKind::InvalidArgument, "inverse of zero");
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (sgn(o.im_) == 0) {
    if (sgn(o.re_) == 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(10); }

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return rational_to_string(re_);
  std::string imag = rational_to_string(im_) + " i";
  if (sgn(re_) == 0) return imag;
  if (sgn(im_) > 0) return rational_to_string(re_) + "+" + imag;
  return rational_to_string(re_) + imag;
}

}  // namespace oscint
