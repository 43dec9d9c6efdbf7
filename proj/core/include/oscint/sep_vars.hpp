#pragma once

#include "oscint/diff_operator.hpp"
#include "oscint/foi.hpp"
#include "oscint/jet.hpp"
#include "oscint/matrix.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

namespace oscint::sep {

// "z", "zb" for m = 1; otherwise z1..zm, zb1..zbm.
VarList chart_variables(std::size_t m);

// Formal potential Phi = nu^{-1} Phi_{-1} + Phi_0 + ... on a chart with variables
// z^1..z^m, zbar^1..zbar^m in that order.
class KahlerPotential {
 public:
  explicit KahlerPotential(WeightedJet phi);

  std::size_t m() const { return m_; }
  const WeightedJet& phi() const { return phi_; }
  const VarList& vars() const { return phi_.vars(); }
  // g_{pq} = d^2 Phi_{-1} / dz^p dzbar^q (0)
  const Matrix& g() const { return g_; }
  std::size_t holo(std::size_t p) const { return p; }
  std::size_t anti(std::size_t q) const { return m_ + q; }
  foi::ComplexStructure complex_structure() const;

 private:
  WeightedJet phi_;
  std::size_t m_;
  Matrix g_;
};

using JetMatrix = std::vector<std::vector<WeightedJet>>;

enum class StarPrimeVariant { Wick, Dual };

// Anti-Wick star product with classifying potential Phi. Left multiplication operators
// of monomials are cached; the cache is shared between copies and guarded by a mutex.
class StarProduct {
 public:
  explicit StarProduct(KahlerPotential phi);

  const KahlerPotential& potential() const { return phi_; }
  const VarList& vars() const { return phi_.vars(); }
  std::size_t m() const { return phi_.m(); }
  // (G^{-1}) for G_{kl}(z, zbar) = d^2 Phi_{-1} / dz^k dzbar^l
  const JetMatrix& metric_inverse() const { return ginv_; }
  const JetMatrix& metric() const { return gmat_; }

  // L_f with holomorphic derivatives only, exact through weight min(W_f, target).
  DiffOperator left_mult(const WeightedJet& f, int target) const;
  DiffOperator left_mult(const WeightedJet& f) const { return left_mult(f, f.weight()); }

  WeightedJet star(const WeightedJet& f, const WeightedJet& g) const;
  // I(z^a zbar^b) = zbar^b * z^a, extended linearly.
  WeightedJet berezin(const WeightedJet& f) const;
  WeightedJet berezin_inverse(const WeightedJet& f) const;
  // Wick: I^{-1}(If * Ig); Dual: the opposite product.
  WeightedJet star_prime(const WeightedJet& f, const WeightedJet& g, StarPrimeVariant v = StarPrimeVariant::Wick) const;

  // Coefficient of nu^1 in f * g for nu-free f, g.
  WeightedJet c1(const WeightedJet& f, const WeightedJet& g) const;
  // {f, g} = -i (G^{-1})_{lk} (d_{zbar^l} f d_{z^k} g - d_{zbar^l} g d_{z^k} f),
  // so that C_1(f, g) - C_1(g, f) = i {f, g}.
  WeightedJet poisson_bracket(const WeightedJet& f, const WeightedJet& g) const;

 private:
  struct Cache {
    std::mutex mu;
    std::map<std::pair<Exponents, int>, std::shared_ptr<const DiffOperator>> mono;
    std::map<std::tuple<int, Exponents, std::size_t>, WeightedJet> dphi;
  };

  std::shared_ptr<const DiffOperator> mono_left_mult(const Exponents& mu, int target) const;
  const WeightedJet& dphi(int s, const Exponents& beta, std::size_t l) const;

  KahlerPotential phi_;
  JetMatrix gmat_;
  JetMatrix ginv_;
  std::shared_ptr<Cache> cache_;
};

struct DualPotential {
  WeightedJet psi;
  // nu-dependent constant fixed by dPhi/dnu + I(dPsi/dnu) = m/nu
  LaurentScalar constant;
};

DualPotential dual_potential(const StarProduct& sp);

// I(d_j Psi) + d_j Phi for every chart variable; zero when the gradient relations hold.
std::vector<WeightedJet> gradient_residuals(const StarProduct& sp, const WeightedJet& psi);
// dPhi/dnu + I(dPsi/dnu) - m/nu
WeightedJet normalization_residual(const StarProduct& sp, const WeightedJet& psi);

struct TraceDensity {
  // log density against nu^{-m} dz^1..dz^m dzbar^1..dzbar^m
  WeightedJet log_density;
  foi::NormConstant prefactor{GQ(1)};
};

TraceDensity trace_density(const StarProduct& sp, const DualPotential& dual);

// (Phi_0 + Psi_0) - log(det G / det g); constant when the density is canonical.
WeightedJet log_det_defect(const StarProduct& sp, const DualPotential& dual);
bool is_constant(const WeightedJet& f);

struct DerivationReport {
  WeightedJet leibniz_left;   // delta^l(f*g) - delta^l f * g - f * delta^l g
  WeightedJet leibniz_right;  // same for delta^r
  WeightedJet intertwining;   // delta^r I(f) - I(delta'^l f)
};

WeightedJet delta_left(const StarProduct& sp, const WeightedJet& f);
WeightedJet delta_right(const StarProduct& sp, const WeightedJet& f);
WeightedJet delta_left_prime(const StarProduct& sp, const DualPotential& dual, const WeightedJet& f);

DerivationReport derivation_suite(const StarProduct& sp, const DualPotential& dual, const WeightedJet& f,
                                  const WeightedJet& g);

// Jet matrix helpers
JetMatrix jet_matrix_inverse(const JetMatrix& a);
WeightedJet jet_determinant(const JetMatrix& a);

}  // namespace oscint::sep
