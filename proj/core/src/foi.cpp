#include "oscint/foi.hpp"

#include "oscint/error.hpp"
#include "oscint/exterior.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace oscint::foi {

namespace {

int degree(const Exponents& a) { return std::accumulate(a.begin(), a.end(), 0); }

Exponents unit(std::size_t n, std::size_t i) {
  Exponents e(n, 0);
  e[i] = 1;
  return e;
}

void all_of_degree(std::size_t n, int d, std::size_t pos, Exponents& cur, std::vector<Exponents>& out) {
  if (pos + 1 == n) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  for (int a = d; a >= 0; --a) {
    cur[pos] = a;
    all_of_degree(n, d - a, pos + 1, cur, out);
  }
}

// (1/k!) P^k for P = -1/2 h^{ij} xi_i xi_j, as nu-free jets.
std::vector<WeightedJet> gaussian_powers(const HessianData& h, const VarList& vars, int kmax) {
  const std::size_t n = vars.size();
  int w = std::max(0, 2 * kmax);
  WeightedJet p(vars, w);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Exponents e(n, 0);
      ++e[i];
      ++e[j];
      p.add_term(e, 0, h.h_inv(i, j) * GQ::rational(-1, 2));
    }
  std::vector<WeightedJet> out;
  out.push_back(WeightedJet::constant(p, GQ(1)));
  for (int k = 1; k <= kmax; ++k) out.push_back((out.back() * p).scaled(GQ::rational(1, k)));
  return out;
}

GQ third_derivative(const WeightedJet& phi_m1, std::size_t i, std::size_t j, std::size_t l) {
  Exponents e(phi_m1.nvars(), 0);
  ++e[i];
  ++e[j];
  ++e[l];
  return multi_factorial(e) * phi_m1.coeff(e, 0);
}

}  // namespace

PhasePair::PhasePair(WeightedJet phase, WeightedJet logdensity, std::optional<ComplexStructure> cs)
    : phase_(std::move(phase)), logdensity_(std::move(logdensity)), cs_(std::move(cs)) {
  if (!phase_.same_vars(logdensity_)) throw Error(ErrorKind::VariableMismatch, "phase and log-density variables differ");
  if (auto s = phase_.min_nu(); s && *s < -1)
    throw Error(ErrorKind::InvalidArgument, "phase has nu-power " + std::to_string(*s) + " below -1");
  if (auto s = logdensity_.min_nu(); s && *s < 0)
    throw Error(ErrorKind::InvalidArgument, "log-density has negative nu-power " + std::to_string(*s));
  if (cs_) {
    std::vector<bool> used(phase_.nvars(), false);
    for (auto [z, zb] : cs_->pairs) {
      if (z >= used.size() || zb >= used.size() || used[z] || used[zb] || z == zb)
        throw Error(ErrorKind::InvalidArgument, "complex structure must pair distinct variables once");
      used[z] = used[zb] = true;
    }
    if (2 * cs_->pairs.size() != phase_.nvars())
      throw Error(ErrorKind::InvalidArgument, "complex structure must pair every variable");
  }
}

PhasePair PhasePair::flat_density(WeightedJet phase, std::optional<ComplexStructure> cs) {
  WeightedJet u = phase.zero_like();
  return PhasePair(std::move(phase), std::move(u), std::move(cs));
}

WeightedJet PhasePair::total_phase() const { return phase_ + logdensity_; }

PhasePair PhasePair::shifted(const LaurentScalar& b) const {
  return PhasePair(phase_ + WeightedJet::from_scalar(phase_, b), logdensity_, cs_);
}

HessianData HessianData::from_matrix(Matrix h) {
  if (!h.is_symmetric()) throw Error(ErrorKind::InvalidArgument, "Hessian must be symmetric");
  Matrix inv;
  try {
    inv = inverse(h);
  } catch (const Error&) {
    throw Error(ErrorKind::SingularHessian, "Hessian " + h.to_string() + " is not invertible");
  }
  return HessianData{std::move(h), std::move(inv)};
}

NormConstant::NormConstant(GQ c, int two_pi_half_exponent, GQ exp_arg)
    : c_(std::move(c)), k_(two_pi_half_exponent), exp_arg_(std::move(exp_arg)) {
  if (c_.is_zero()) throw Error(ErrorKind::InvalidArgument, "normalization constant must be nonzero");
}

NormConstant NormConstant::inverse() const { return NormConstant(c_.inverse(), -k_, -exp_arg_); }

NormConstant operator*(const NormConstant& a, const NormConstant& b) {
  return NormConstant(a.c_ * b.c_, a.k_ + b.k_, a.exp_arg_ + b.exp_arg_);
}

std::complex<double> NormConstant::value() const {
  std::complex<double> v = c_.to_complex();
  v *= std::pow(2 * std::numbers::pi, k_ / 2.0);
  v *= std::exp(exp_arg_.to_complex());
  return v;
}

std::string NormConstant::to_string() const {
  std::string c = c_.to_string();
  if (!c_.is_real() && sgn(c_.re()) != 0) c = "(" + c + ")";
  std::string out = c;
  if (k_ != 0) out += "*(2pi)^(" + std::to_string(k_) + "/2)";
  if (!exp_arg_.is_zero()) out += "*exp(" + exp_arg_.to_string() + ")";
  return out;
}

PhaseSplit phase_split(const PhasePair& p) {
  WeightedJet total = p.total_phase();
  const std::size_t n = p.n();
  if (total.weight() < 0) throw InsufficientTruncation("phase must carry the quadratic part of phi_{-1}", 0, total.weight());
  Exponents zero(n, 0);
  if (!total.coeff(zero, -1).is_zero())
    throw Error(ErrorKind::NonzeroCriticalValue, "phi_{-1}(0) = " + total.coeff(zero, -1).to_string());
  for (std::size_t i = 0; i < n; ++i)
    if (!total.coeff(unit(n, i), -1).is_zero())
      throw Error(ErrorKind::NonzeroGradient, "d phi_{-1}/d" + p.vars()[i] + " (0) = " + total.coeff(unit(n, i), -1).to_string());
  Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Exponents e(n, 0);
      ++e[i];
      ++e[j];
      h(i, j) = total.coeff(e, -1) * (i == j ? GQ(2) : GQ(1));
    }
  HessianData hd = HessianData::from_matrix(std::move(h));

  WeightedJet phi_m1 = total.nu_component(-1);
  WeightedJet chi = phi_m1.zero_like();
  for (const auto& [m, c] : phi_m1.terms())
    if (m.degree() >= 3) chi.add_term(m, c);
  GQ c0 = total.coeff(zero, 0);
  WeightedJet tilde = total.zero_like();
  for (const auto& [m, c] : total.terms()) {
    if (m.nu == -1) continue;
    if (m.nu == 0 && m.degree() == 0) continue;
    tilde.add_term(m, c);
  }
  return PhaseSplit{std::move(hd), std::move(chi), std::move(tilde), c0};
}

PointDistribution gaussian_foi(const HessianData& h, const VarList& vars, int rmax) {
  if (h.h.rows() != vars.size()) throw Error(ErrorKind::VariableMismatch, "Hessian size differs from dimension");
  PointDistribution out(vars, rmax);
  auto powers = gaussian_powers(h, vars, rmax);
  for (int r = 0; r <= rmax; ++r)
    for (const auto& [m, c] : powers[static_cast<std::size_t>(r)].terms()) out.add(r, m.exps, c);
  return out;
}

PointDistribution construct_foi(const PhasePair& p, int rmax) {
  if (rmax < 0) throw Error(ErrorKind::InvalidArgument, "rmax must be nonnegative");
  const int w = 2 * rmax;
  PhaseSplit split = phase_split(p);
  if (p.phase().weight() < w || p.logdensity().weight() < w)
    throw InsufficientTruncation("construct_foi needs phase and log-density weight 2*rmax",
                                 w, std::min(p.phase().weight(), p.logdensity().weight()));
  const std::size_t n = p.n();
  WeightedJet exponent = split.chi.nu_shift(-1).truncated(w) + split.phi_tilde.truncated(w);
  WeightedJet e = exp(exponent);

  int maxdeg = 0;
  for (const auto& [m, c] : e.terms()) maxdeg = std::max(maxdeg, m.degree());
  maxdeg += w;
  auto powers = gaussian_powers(split.hessian, p.vars(), maxdeg / 2);
  auto moment = [&](const Exponents& a) -> GQ {
    int d = degree(a);
    if (d % 2) return GQ(0);
    GQ c = powers[static_cast<std::size_t>(d / 2)].coeff(a, 0);
    return c.is_zero() ? c : c * multi_factorial(a);
  };

  PointDistribution out(p.vars(), rmax);
  Exponents a(n);
  for (int db = 0; db <= w; ++db) {
    std::vector<Exponents> betas;
    Exponents cur(n, 0);
    if (n == 0) continue;
    all_of_degree(n, db, 0, cur, betas);
    for (const auto& beta : betas) {
      std::map<int, GQ> v;
      for (const auto& [m, c] : e.terms()) {
        for (std::size_t k = 0; k < n; ++k) a[k] = beta[k] + m.exps[k];
        int d = degree(a);
        if (d % 2) continue;
        int power = m.nu + d / 2;
        if (power > rmax) continue;
        GQ mo = moment(a);
        if (!mo.is_zero()) v[power] += c * mo;
      }
      GQ inv_fact = multi_factorial(beta).inverse();
      for (const auto& [r, c] : v) out.add(r, beta, c * inv_fact);
    }
  }
  return out;
}

LaurentScalar ibp_residual(const PointDistribution& lambda, const PhasePair& p, std::size_t i, const WeightedJet& f) {
  if (i >= p.n()) throw Error(ErrorKind::InvalidArgument, "direction index out of range");
  WeightedJet amplitude = derive(f, i) + derive(p.total_phase(), i) * f;
  return lambda.apply(amplitude);
}

Lambda1Report lambda1_check(const PointDistribution& lambda, const PhasePair& p) {
  const std::size_t n = p.n();
  if (lambda.rmax() < 1) throw InsufficientTruncation("lambda1_check needs the first row", 1, lambda.rmax());
  Exponents zero(n, 0);
  Lambda1Report rep;
  rep.alpha = lambda.coeff(0, zero);
  if (rep.alpha.is_zero() || lambda.row(0).size() != 1)
    throw Error(ErrorKind::InvalidArgument, "leading row is not a nonzero multiple of delta");
  for (const auto& [a, c] : lambda.row(1))
    if (degree(a) > 2) throw Error(ErrorKind::NotSecondOrder, "first row uses a derivative of order " + std::to_string(degree(a)));

  PhaseSplit split = phase_split(p);
  WeightedJet total = p.total_phase();
  if (total.weight() < 1) throw InsufficientTruncation("lambda1_check needs third derivatives of the phase", 1, total.weight());
  const Matrix& hinv = split.hessian.h_inv;

  rep.A = Matrix(n, n);
  rep.B.assign(n, GQ(0));
  for (std::size_t k = 0; k < n; ++k) {
    rep.B[k] = lambda.coeff(1, unit(n, k));
    for (std::size_t l = 0; l < n; ++l) {
      Exponents e(n, 0);
      ++e[k];
      ++e[l];
      rep.A(k, l) = k == l ? lambda.coeff(1, e) * GQ(2) : lambda.coeff(1, e);
    }
  }
  rep.K = -(lambda.coeff(1, zero) / rep.alpha);
  rep.expected_A = hinv.scaled(-rep.alpha);
  rep.A_matches = rep.A == rep.expected_A;

  WeightedJet phi_m1 = total.nu_component(-1);
  std::vector<GQ> grad(n);
  for (std::size_t i = 0; i < n; ++i) grad[i] = total.coeff(unit(n, i), 0);
  rep.B_stated.assign(n, GQ(0));
  rep.B_full.assign(n, GQ(0));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      GQ third(0);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) third += rep.A(j, l) * third_derivative(phi_m1, i, j, l);
      rep.B_stated[k] -= rep.alpha * hinv(k, i) * grad[i];
      rep.B_full[k] += hinv(k, i) * (-(rep.alpha * grad[i]) - GQ::rational(1, 2) * third);
    }
  }
  rep.stated_formula_holds = rep.B == rep.B_stated;
  rep.full_formula_holds = rep.B == rep.B_full;
  rep.correction.resize(n);
  for (std::size_t k = 0; k < n; ++k) rep.correction[k] = rep.B[k] - rep.B_stated[k];
  return rep;
}

PointDistribution nu_transform(const PointDistribution& lambda, const PhasePair& p) {
  WeightedJet total = p.total_phase();
  if (!total.coeff(Exponents(p.n(), 0), -1).is_zero())
    throw Error(ErrorKind::NonzeroCriticalValue, "nu_transform needs phi_{-1}(0) = 0");
  WeightedJet dpsi = nu_derive(total);
  PointDistribution out = lambda.index_weighted() - lambda.precompose(dpsi).nu_shift(1);
  return out.scaled(GQ(-2) / GQ(static_cast<long>(p.n())));
}

LaurentScalar strong_defect(const PointDistribution& lambda, const PhasePair& p) {
  PointDistribution t = nu_transform(lambda, p);
  WeightedJet one = WeightedJet::constant(p.vars(), GQ(1), 2 * lambda.rmax() + 2);
  return t.apply(one) / lambda.apply(one);
}

LaurentScalar strong_normalize(const PointDistribution& lambda, const PhasePair& p) {
  LaurentScalar a = strong_defect(lambda, p);
  // Shifting the phase by b turns a into a + 2 nu b'/n.
  LaurentScalar b = LaurentScalar::zero(a.order() + 1);
  const GQ half_n = GQ(static_cast<long>(p.n())) * GQ::rational(1, 2);
  for (const auto& [k, ak] : a.coeffs()) {
    if (k == 0) continue;
    if (k < 0) throw Error(ErrorKind::NonUnitLeading, "defect has a negative nu-power");
    b.add_term(k, -(half_n * ak) / GQ(k));
  }
  return b;
}

RankCertificate pairing_rank(const PointDistribution& lambda, int d) {
  if (d < 0) throw Error(ErrorKind::InvalidArgument, "degree must be nonnegative");
  const std::size_t n = lambda.nvars();
  RankCertificate cert;
  cert.basis = monomials_up_to(n, d);
  const std::size_t s = cert.basis.size();
  cert.size = s;
  int w = lambda.required_weight(lambda.rmax());
  cert.gram.assign(s, std::vector<LaurentScalar>(s));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      Exponents e(n);
      for (std::size_t k = 0; k < n; ++k) e[k] = cert.basis[i][k] + cert.basis[j][k];
      cert.gram[i][j] = lambda.apply(WeightedJet::monomial(lambda.vars(), e, 0, GQ(1), w + degree(e)));
    }
  auto m = cert.gram;
  LaurentScalar det(GQ(1));
  for (std::size_t col = 0; col < s; ++col) {
    std::size_t piv = s;
    for (std::size_t i = col; i < s; ++i) {
      if (m[i][col].is_zero()) continue;
      if (piv == s || m[i][col].valuation() < m[piv][col].valuation()) piv = i;
    }
    if (piv == s) {
      int avail = m[col][col].order();
      throw InsufficientTruncation("pairing_rank cannot certify a nonzero pivot in column " + std::to_string(col),
                                   avail + 1, avail);
    }
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    const LaurentScalar& p = m[col][col];
    det = det * p;
    cert.pivots.push_back(p);
    for (std::size_t i = col + 1; i < s; ++i) {
      if (m[i][col].is_zero() && m[i][col].exact()) continue;
      LaurentScalar f = m[i][col] / p;
      for (std::size_t j = col; j < s; ++j) m[i][j] -= f * m[col][j];
    }
  }
  cert.determinant = det;
  cert.full_rank = !det.is_zero();
  return cert;
}

PhasePair equivalent_pair(const PhasePair& p, const WeightedJet& u_prime) {
  if (auto s = u_prime.min_nu(); s && *s < 0)
    throw Error(ErrorKind::InvalidArgument, "u' must have nu-powers >= 0");
  return PhasePair(p.phase() + u_prime, p.logdensity() - u_prime, p.complex_structure());
}

NormConstant hermitian_model_constant(const PhasePair& p, const NormConstant& tau) {
  if (!p.complex_structure()) throw Error(ErrorKind::InvalidArgument, "hermitian_model_constant needs a complex structure");
  const auto& pairs = p.complex_structure()->pairs;
  const std::size_t m = pairs.size();
  WeightedJet total = p.total_phase();
  Exponents zero(p.n(), 0);
  if (!total.coeff(zero, -1).is_zero())
    throw Error(ErrorKind::NonzeroCriticalValue, "phi_{-1}(0) = " + total.coeff(zero, -1).to_string());
  for (std::size_t i = 0; i < p.n(); ++i)
    if (!total.coeff(unit(p.n(), i), -1).is_zero()) throw Error(ErrorKind::NonzeroGradient, "phi_{-1} has a linear term");
  auto second = [&](std::size_t a, std::size_t b) {
    Exponents e(p.n(), 0);
    ++e[a];
    ++e[b];
    return total.coeff(e, -1) * (a == b ? GQ(2) : GQ(1));
  };
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t q = 0; q < m; ++q) {
      if (!second(pairs[k].first, pairs[q].first).is_zero())
        throw Error(ErrorKind::NotHermitianType, "holomorphic block entry (" + std::to_string(k) + "," + std::to_string(q) + ") is nonzero");
      if (!second(pairs[k].second, pairs[q].second).is_zero())
        throw Error(ErrorKind::NotHermitianType, "antiholomorphic block entry (" + std::to_string(k) + "," + std::to_string(q) + ") is nonzero");
    }
  Matrix herm(m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t q = 0; q < m; ++q) herm(k, q) = second(pairs[k].first, pairs[q].second);
  if (determinant(herm).is_zero()) throw Error(ErrorKind::SingularHessian, "degenerate Hermitian Hessian");
  // Omega = -i H_{pq} dz^p ^ dzbar^q against dz^1..dz^m dzbar^1..dzbar^m
  ExteriorForm omega;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t q = 0; q < m; ++q) {
      ExteriorForm::Blade dz = ExteriorForm::Blade{1} << k;
      ExteriorForm::Blade dzb = ExteriorForm::Blade{1} << (m + q);
      omega += wedge(ExteriorForm::blade(dz, GQ(1)), ExteriorForm::blade(dzb, GQ(0, -1) * herm(k, q)));
    }
  ExteriorForm::Blade top = m == 0 ? 0 : ((ExteriorForm::Blade{1} << (2 * m)) - 1);
  GQ omega_m = omega.power(static_cast<unsigned>(m)).coeff(top);
  GQ mfact = multi_factorial(Exponents{static_cast<int>(m)});
  GQ gamma = total.coeff(zero, 0);
  return NormConstant(mfact * tau.c() / omega_m, 2 * static_cast<int>(m) + tau.two_pi_half_exponent(),
                      gamma + tau.exp_arg());
}

RealModelConstant real_model_constant_numeric(const PhasePair& p, double tau) {
  PhaseSplit split = phase_split(p);
  const Matrix& h = split.hessian.h;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (!h(i, j).is_real()) throw Error(ErrorKind::NotRealData, "Hessian has a non-real entry");
  GQ q = determinant(h.scaled(GQ(-1)));
  if (q.is_zero()) throw Error(ErrorKind::SingularHessian, "zero determinant");
  double n = static_cast<double>(p.n());
  RealModelConstant out;
  out.magnitude = std::pow(2 * std::numbers::pi, n / 2) * std::abs(tau) / std::sqrt(std::abs(q.re().get_d()));
  out.sign_ambiguous = true;
  return out;
}

std::vector<Exponents> monomials_up_to(std::size_t n, int d) {
  std::vector<Exponents> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  for (int k = 0; k <= d; ++k) {
    Exponents cur(n, 0);
    all_of_degree(n, k, 0, cur, out);
  }
  return out;
}

}  // namespace oscint::foi
