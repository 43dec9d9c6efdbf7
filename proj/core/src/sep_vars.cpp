#include "oscint/sep_vars.hpp"

#include "oscint/distribution.hpp"
#include "oscint/error.hpp"
#include "oscint/exterior.hpp"

#include <algorithm>
#include <numeric>

namespace oscint::sep {

namespace {

int degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

// Multi-indices in m variables of total degree exactly d.
std::vector<Exponents> exact_degree(std::size_t m, int d) {
  std::vector<Exponents> out;
  Exponents cur(m, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == m) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (m == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  rec(rec, 0, d);
  return out;
}

bool dominates(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

Exponents minus(Exponents a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

// Holomorphic multi-index placed into the full chart exponent vector.
Exponents widen(const Exponents& alpha, std::size_t n) {
  Exponents e(n, 0);
  std::copy(alpha.begin(), alpha.end(), e.begin());
  return e;
}

JetMatrix multiply(const JetMatrix& a, const JetMatrix& b) {
  const std::size_t n = a.size();
  JetMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      WeightedJet acc = multiply_full(a[i][0], b[0][j]);
      for (std::size_t k = 1; k < n; ++k) acc += multiply_full(a[i][k], b[k][j]);
      c[i].push_back(std::move(acc));
    }
  return c;
}

WeightedJet nu_inverse(const WeightedJet& like, const GQ& c) {
  return WeightedJet::monomial(like.vars(), Exponents(like.nvars(), 0), -1, c, like.weight());
}

}  // namespace

VarList chart_variables(std::size_t m) {
  if (m == 1) return {"z", "zb"};
  VarList v;
  for (std::size_t p = 1; p <= m; ++p) v.push_back("z" + std::to_string(p));
  for (std::size_t p = 1; p <= m; ++p) v.push_back("zb" + std::to_string(p));
  return v;
}

KahlerPotential::KahlerPotential(WeightedJet phi) : phi_(std::move(phi)), m_(phi_.nvars() / 2), g_(m_, m_) {
  if (phi_.nvars() == 0 || phi_.nvars() % 2 != 0)
    throw Error(ErrorKind::InvalidArgument, "a chart needs an even, positive number of variables");
  if (phi_.min_nu() && *phi_.min_nu() < -1) throw Error(ErrorKind::InvalidArgument, "potential has nu-powers below -1");
  for (const auto& [mono, c] : phi_.terms()) {
    Exponents swapped(phi_.nvars());
    for (std::size_t p = 0; p < m_; ++p) {
      swapped[p] = mono.exps[m_ + p];
      swapped[m_ + p] = mono.exps[p];
    }
    if (phi_.coeff(swapped, mono.nu) != c.conj())
      throw Error(ErrorKind::NotRealData, "potential is not real: coefficient of " + phi_.vars()[0] + "-monomial " +
                                              std::to_string(mono.nu) + " has no conjugate partner");
  }
  if (phi_.weight() < 0) throw InsufficientTruncation("potential metric", 0, phi_.weight());
  for (std::size_t p = 0; p < m_; ++p)
    for (std::size_t q = 0; q < m_; ++q) {
      Exponents e(phi_.nvars(), 0);
      ++e[p];
      ++e[m_ + q];
      g_(p, q) = phi_.coeff(e, -1);
    }
  if (determinant(g_).is_zero()) throw Error(ErrorKind::SingularMatrix, "metric g is degenerate at the origin");
}

foi::ComplexStructure KahlerPotential::complex_structure() const {
  foi::ComplexStructure cs;
  for (std::size_t p = 0; p < m_; ++p) cs.pairs.emplace_back(p, m_ + p);
  return cs;
}

JetMatrix jet_matrix_inverse(const JetMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  Matrix a0(n, n);
  Exponents zero(a[0][0].nvars(), 0);
  int w = a[0][0].weight();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a0(i, j) = a[i][j].coeff(zero, 0);
      w = std::min(w, a[i][j].weight());
      if (a[i][j].min_nu() && *a[i][j].min_nu() < 0)
        throw Error(ErrorKind::InvalidArgument, "jet matrix inverse needs nu-regular entries");
    }
  Matrix inv0 = inverse(a0);
  JetMatrix base(n), step(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      base[i].push_back(WeightedJet::constant(a[i][j], inv0(i, j)).truncated(w));
      // -(a0^{-1} (a - a0))
      WeightedJet acc = a[i][j].zero_like();
      for (std::size_t k = 0; k < n; ++k) {
        WeightedJet e = a[k][j] - WeightedJet::constant(a[k][j], a0(k, j));
        acc -= e.scaled(inv0(i, k));
      }
      step[i].push_back(acc.truncated(w));
    }
  // sum_j (-a0^{-1} e)^j a0^{-1}; every factor raises the filtration by at least one
  JetMatrix sum = base, term = base;
  for (int it = 0; it <= w + 1; ++it) {
    term = multiply(step, term);
    bool empty = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        term[i][j] = term[i][j].truncated(w);
        if (!term[i][j].empty()) empty = false;
        sum[i][j] += term[i][j];
      }
    if (empty) break;
  }
  return sum;
}

WeightedJet jet_determinant(const JetMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "determinant of an empty jet matrix");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  WeightedJet out = a[0][0].zero_like();
  bool first = true;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    WeightedJet prod = a[0][perm[0]];
    for (std::size_t i = 1; i < n; ++i) prod = multiply_full(prod, a[i][perm[i]]);
    if (inversions % 2) prod = -prod;
    if (first) out = prod;
    else out += prod;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

StarProduct::StarProduct(KahlerPotential phi) : phi_(std::move(phi)), cache_(std::make_shared<Cache>()) {
  const std::size_t m = phi_.m();
  WeightedJet phi_m1 = phi_.phi().nu_component(-1);
  gmat_.assign(m, {});
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = 0; l < m; ++l) gmat_[k].push_back(derive(derive(phi_m1, phi_.holo(k)), phi_.anti(l)));
  ginv_ = jet_matrix_inverse(gmat_);
}

const WeightedJet& StarProduct::dphi(int s, const Exponents& beta, std::size_t l) const {
  auto key = std::make_tuple(s, beta, l);
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->dphi.find(key);
    if (it != cache_->dphi.end()) return it->second;
  }
  WeightedJet d = derive(derive_multi(phi_.phi().nu_component(s), widen(beta, vars().size())), phi_.anti(l));
  std::lock_guard lock(cache_->mu);
  return cache_->dphi.emplace(std::move(key), std::move(d)).first->second;
}

// Rows a_{r, alpha} of L_{x^mu} for nu-free x^mu, |alpha| <= r, solved from
//   sum_k (gamma_k + 1) G_{kl} a_{r+1, gamma+e_k}
//     = d_{zbar^l} a_{r,gamma} - sum_{s >= -1} sum_{beta} C(gamma+beta, beta) a_{r-s, gamma+beta} d^beta d_{zbar^l} Phi_s
// (the s = -1, |beta| = 1 terms moved to the left) in order of decreasing |gamma|.
// a_{r,alpha} is kept through degree target - 2r + |alpha|; row r shifts weight by at least r.
std::shared_ptr<const DiffOperator> StarProduct::mono_left_mult(const Exponents& mu, int target) const {
  auto key = std::make_pair(mu, target);
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->mono.find(key);
    if (it != cache_->mono.end()) return it->second;
  }
  const std::size_t m = phi_.m(), n = vars().size();
  auto op = std::make_shared<DiffOperator>(phi_.phi().shared_vars(), target);
  if (degree(mu) <= target) {
    std::vector<std::map<Exponents, WeightedJet>> a(static_cast<std::size_t>(target) + 2);
    a[0].emplace(Exponents(m, 0), WeightedJet::monomial(vars(), mu, 0, GQ(1), target));
    for (int r = 0; r < target; ++r) {
      auto& next = a[static_cast<std::size_t>(r) + 1];
      for (int d = r; d >= 0; --d) {
        const int budget = target - 2 * (r + 1) + d + 1;
        if (budget < 0) break;
        for (const Exponents& gamma : exact_degree(m, d)) {
          std::vector<WeightedJet> rhs;
          for (std::size_t l = 0; l < m; ++l) {
            WeightedJet acc(phi_.phi().shared_vars(), budget);
            auto it = a[static_cast<std::size_t>(r)].find(gamma);
            if (it != a[static_cast<std::size_t>(r)].end()) acc += derive(it->second, phi_.anti(l));
            for (const auto& [alpha, c] : next) {
              if (degree(alpha) - d < 2 || !dominates(alpha, gamma)) continue;
              Exponents beta = minus(alpha, gamma);
              acc -= multiply_full(c, dphi(-1, beta, l)).scaled(multi_binomial(alpha, beta));
            }
            for (int s = 0; s <= r; ++s)
              for (const auto& [alpha, c] : a[static_cast<std::size_t>(r - s)]) {
                if (degree(alpha) == d || !dominates(alpha, gamma)) continue;
                Exponents beta = minus(alpha, gamma);
                acc -= multiply_full(c, dphi(s, beta, l)).scaled(multi_binomial(alpha, beta));
              }
            rhs.push_back(acc.truncated(budget));
          }
          for (std::size_t k = 0; k < m; ++k) {
            WeightedJet v(phi_.phi().shared_vars(), budget);
            for (std::size_t l = 0; l < m; ++l) v += multiply_full(ginv_[l][k], rhs[l]);
            v = v.truncated(budget).scaled(GQ::rational(1, gamma[k] + 1));
            Exponents alpha = gamma;
            ++alpha[k];
            auto found = next.find(alpha);
            if (found == next.end()) {
              next.emplace(alpha, std::move(v));
            } else {
              if (!found->second.agrees_with(v))
                throw Error(ErrorKind::InconsistentSystem,
                            "left multiplication system is inconsistent at nu^" + std::to_string(r + 1));
              if (v.weight() > found->second.weight()) found->second = std::move(v);
            }
          }
        }
      }
    }
    for (std::size_t r = 0; r < a.size(); ++r)
      for (const auto& [alpha, c] : a[r]) op->add_term(static_cast<int>(r), widen(alpha, n), c);
  }
  std::lock_guard lock(cache_->mu);
  return cache_->mono.emplace(std::move(key), std::move(op)).first->second;
}

DiffOperator StarProduct::left_mult(const WeightedJet& f, int target) const {
  if (!f.same_vars(phi_.phi())) throw Error(ErrorKind::VariableMismatch, "left_mult: jet is not on the chart");
  const int t = std::min(target, f.weight());
  DiffOperator out(phi_.phi().shared_vars(), t);
  for (const auto& [mono, c] : f.terms()) {
    const int ts = t - 2 * mono.nu;
    if (ts < mono.degree()) continue;
    auto op = mono_left_mult(mono.exps, ts);
    out.cap_weight(op->weight() + 2 * mono.nu);
    for (const auto& [key, coeff] : op->terms()) out.add_term(key.first + mono.nu, key.second, coeff.scaled(c));
  }
  return out;
}

WeightedJet StarProduct::star(const WeightedJet& f, const WeightedJet& g) const {
  if (!g.same_vars(phi_.phi())) throw Error(ErrorKind::VariableMismatch, "star: jet is not on the chart");
  const int target = std::min(f.weight(), g.weight() + f.filtration() - g.filtration());
  return op_apply(left_mult(f, target), g);
}

WeightedJet StarProduct::berezin(const WeightedJet& f) const {
  if (!f.same_vars(phi_.phi())) throw Error(ErrorKind::VariableMismatch, "berezin: jet is not on the chart");
  const std::size_t m = phi_.m(), n = vars().size();
  const int w = f.weight();
  WeightedJet out = f.zero_like();
  for (const auto& [mono, c] : f.terms()) {
    Exponents hol(n, 0), ant(n, 0);
    for (std::size_t p = 0; p < m; ++p) {
      hol[p] = mono.exps[p];
      ant[m + p] = mono.exps[m + p];
    }
    const int tb = w - 2 * mono.nu - degree(hol);
    if (tb < degree(ant)) continue;
    auto op = mono_left_mult(ant, tb);
    WeightedJet za = WeightedJet::monomial(vars(), hol, 0, GQ(1), w - 2 * mono.nu);
    out += op_apply(*op, za).nu_shift(mono.nu).scaled(c);
  }
  return out.truncated(w);
}

WeightedJet StarProduct::berezin_inverse(const WeightedJet& f) const {
  // g <- f - (I - 1) g; I - 1 raises the nu-power, so the error leaves the weight window
  const int smin = f.min_nu().value_or(0);
  const int iterations = floor_div(f.weight(), 2) - smin + 2;
  WeightedJet g = f;
  for (int it = 0; it < iterations; ++it) {
    WeightedJet next = f - (berezin(g) - g);
    if (next == g) break;
    g = std::move(next);
  }
  return g;
}

WeightedJet StarProduct::star_prime(const WeightedJet& f, const WeightedJet& g, StarPrimeVariant v) const {
  if (v == StarPrimeVariant::Dual) return star_prime(g, f, StarPrimeVariant::Wick);
  return berezin_inverse(star(berezin(f), berezin(g)));
}

WeightedJet StarProduct::c1(const WeightedJet& f, const WeightedJet& g) const { return star(f, g).nu_component(1); }

WeightedJet StarProduct::poisson_bracket(const WeightedJet& f, const WeightedJet& g) const {
  const std::size_t m = phi_.m();
  WeightedJet out;
  bool first = true;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = 0; l < m; ++l) {
      WeightedJet t = multiply_full(derive(f, phi_.anti(l)), derive(g, phi_.holo(k))) -
                      multiply_full(derive(g, phi_.anti(l)), derive(f, phi_.holo(k)));
      t = multiply_full(ginv_[l][k], t);
      if (first) out = t;
      else out += t;
      first = false;
    }
  return out.scaled(GQ(0, -1));
}

DualPotential dual_potential(const StarProduct& sp) {
  const WeightedJet& phi = sp.potential().phi();
  const std::size_t n = sp.vars().size();
  std::vector<WeightedJet> w;
  for (std::size_t j = 0; j < n; ++j) w.push_back(-sp.berezin_inverse(derive(phi, j)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!derive(w[i], j).agrees_with(derive(w[j], i)))
        throw Error(ErrorKind::IntegrabilityFailure,
                    "gradient system is not closed in " + sp.vars()[i] + ", " + sp.vars()[j]);
  int wmin = w[0].weight();
  for (const auto& x : w) wmin = std::min(wmin, x.weight());
  // radial homotopy: x^mu dx^j -> x^{mu + e_j} / (|mu| + 1)
  WeightedJet rad(phi.shared_vars(), wmin + 1);
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [mono, c] : w[j].terms()) {
      Exponents e = mono.exps;
      const int deg = degree(e);
      ++e[j];
      rad.add_term(e, mono.nu, c * GQ::rational(1, deg + 1));
    }
  WeightedJet cprime = -nu_derive(phi) - sp.berezin(nu_derive(rad));
  cprime += nu_inverse(cprime, GQ(static_cast<long>(sp.m())));
  LaurentScalar constant(GQ(0), floor_div(cprime.weight(), 2) + 1);
  for (const auto& [mono, c] : cprime.terms()) {
    if (mono.degree() > 0)
      throw Error(ErrorKind::IntegrabilityFailure, "normalization defect depends on the chart variables");
    if (mono.nu == -1) throw Error(ErrorKind::IntegrabilityFailure, "normalization defect has a nu^{-1} term");
    constant.add_term(mono.nu + 1, c * GQ::rational(1, mono.nu + 1));
  }
  DualPotential out{rad + WeightedJet::from_scalar(rad, constant), constant};
  return out;
}

std::vector<WeightedJet> gradient_residuals(const StarProduct& sp, const WeightedJet& psi) {
  std::vector<WeightedJet> out;
  for (std::size_t j = 0; j < sp.vars().size(); ++j)
    out.push_back(sp.berezin(derive(psi, j)) + derive(sp.potential().phi(), j));
  return out;
}

WeightedJet normalization_residual(const StarProduct& sp, const WeightedJet& psi) {
  WeightedJet r = nu_derive(sp.potential().phi()) + sp.berezin(nu_derive(psi));
  return r - nu_inverse(r, GQ(static_cast<long>(sp.m())));
}

TraceDensity trace_density(const StarProduct& sp, const DualPotential& dual) {
  const std::size_t m = sp.m();
  TraceDensity out;
  out.log_density = sp.potential().phi() + dual.psi;
  // omega_{-1} = i g_{pq} dz^p ^ dzbar^q against dz^1..dz^m dzbar^1..dzbar^m
  ExteriorForm omega;
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q)
      omega += wedge(ExteriorForm::generator(static_cast<unsigned>(p)),
                     ExteriorForm::generator(static_cast<unsigned>(m + q)))
                   .scaled(GQ::i() * sp.potential().g()(p, q));
  ExteriorForm::Blade top = (ExteriorForm::Blade{1} << (2 * m)) - 1;
  GQ coef = omega.power(static_cast<unsigned>(m)).coeff(top);
  GQ mfact = multi_factorial(Exponents{static_cast<int>(m)});
  GQ base = out.log_density.coeff(Exponents(sp.vars().size(), 0), 0);
  out.prefactor = foi::NormConstant(coef * mfact.inverse(), -2 * static_cast<int>(m), -base);
  return out;
}

WeightedJet log_det_defect(const StarProduct& sp, const DualPotential& dual) {
  WeightedJet det = jet_determinant(sp.metric());
  GQ d0 = det.coeff(Exponents(det.nvars(), 0), 0);
  WeightedJet logdet = log(det.scaled(d0.inverse()));
  return (sp.potential().phi() + dual.psi).nu_component(0) - logdet;
}

bool is_constant(const WeightedJet& f) {
  for (const auto& [mono, c] : f.terms())
    if (mono.degree() > 0) return false;
  return true;
}

WeightedJet delta_left(const StarProduct& sp, const WeightedJet& f) {
  WeightedJet dphi = nu_derive(sp.potential().phi());
  return nu_derive(f) + multiply_full(dphi, f) - sp.star(dphi, f);
}

WeightedJet delta_right(const StarProduct& sp, const WeightedJet& f) {
  WeightedJet dphi = nu_derive(sp.potential().phi());
  return nu_derive(f) + multiply_full(dphi, f) - sp.star(f, dphi);
}

WeightedJet delta_left_prime(const StarProduct& sp, const DualPotential& dual, const WeightedJet& f) {
  WeightedJet dpsi = nu_derive(dual.psi);
  return nu_derive(f) + multiply_full(dpsi, f) - sp.star_prime(dpsi, f);
}

DerivationReport derivation_suite(const StarProduct& sp, const DualPotential& dual, const WeightedJet& f,
                                  const WeightedJet& g) {
  DerivationReport out;
  WeightedJet fg = sp.star(f, g);
  out.leibniz_left = delta_left(sp, fg) - sp.star(delta_left(sp, f), g) - sp.star(f, delta_left(sp, g));
  out.leibniz_right = delta_right(sp, fg) - sp.star(delta_right(sp, f), g) - sp.star(f, delta_right(sp, g));
  out.intertwining = delta_right(sp, sp.berezin(f)) - sp.berezin(delta_left_prime(sp, dual, f));
  return out;
}

}  // namespace oscint::sep
