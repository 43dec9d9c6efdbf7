#pragma once

#include "oscint/distribution.hpp"
#include "oscint/jet.hpp"
#include "oscint/laurent.hpp"
#include "oscint/matrix.hpp"

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace oscint::foi {

// Pairs variable indices (z^p, zbar^p) of a complex chart.
struct ComplexStructure {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// Kernel pair (phi, rho = e^u dx). phi has nu-powers >= -1, u has nu-powers >= 0.
// The critical-point conditions on phi_{-1} are checked by phase_split.
class PhasePair {
 public:
  PhasePair(WeightedJet phase, WeightedJet logdensity, std::optional<ComplexStructure> cs = std::nullopt);
  static PhasePair flat_density(WeightedJet phase, std::optional<ComplexStructure> cs = std::nullopt);

  std::size_t n() const { return phase_.nvars(); }
  const VarList& vars() const { return phase_.vars(); }
  const WeightedJet& phase() const { return phase_; }
  const WeightedJet& logdensity() const { return logdensity_; }
  const std::optional<ComplexStructure>& complex_structure() const { return cs_; }

  // phi + u; the pair (phi + u, dx) is equivalent to (phi, e^u dx).
  WeightedJet total_phase() const;
  // phi + b(nu)
  PhasePair shifted(const LaurentScalar& b) const;

 private:
  WeightedJet phase_;
  WeightedJet logdensity_;
  std::optional<ComplexStructure> cs_;
};

struct HessianData {
  Matrix h;
  Matrix h_inv;

  static HessianData from_matrix(Matrix h);
};

struct PhaseSplit {
  HessianData hessian;
  WeightedJet chi;        // nu-free: phi_{-1} - 1/2 h x x, order of zero >= 3
  WeightedJet phi_tilde;  // phi + u - nu^{-1} phi_{-1} - (phi_0 + u_0)(0)
  GQ critical_constant;   // (phi_0 + u_0)(0)
};

// Value c * (2 pi)^{k/2} * e^{expArg}, kept symbolic.
class NormConstant {
 public:
  NormConstant(GQ c, int two_pi_half_exponent = 0, GQ exp_arg = GQ(0));

  const GQ& c() const { return c_; }
  int two_pi_half_exponent() const { return k_; }
  const GQ& exp_arg() const { return exp_arg_; }

  NormConstant inverse() const;
  friend NormConstant operator*(const NormConstant& a, const NormConstant& b);
  friend bool operator==(const NormConstant& a, const NormConstant& b) = default;
  bool is_one() const { return c_ == GQ(1) && k_ == 0 && exp_arg_.is_zero(); }
  std::complex<double> value() const;
  std::string to_string() const;

 private:
  GQ c_;
  int k_;
  GQ exp_arg_;
};

PhaseSplit phase_split(const PhasePair& p);

// Rows (1/r!) Delta^r at 0 with Delta = -1/2 h^{ij} d_i d_j.
PointDistribution gaussian_foi(const HessianData& h, const VarList& vars, int rmax);

// FOI with leading row delta associated with p, exact through nu^rmax.
// Needs phase and log-density weights >= 2 rmax.
PointDistribution construct_foi(const PhasePair& p, int rmax);

// Lambda(d_i f + d_i(phi + u) f)
LaurentScalar ibp_residual(const PointDistribution& lambda, const PhasePair& p, std::size_t i, const WeightedJet& f);

struct Lambda1Report {
  GQ alpha;
  Matrix A;
  std::vector<GQ> B;
  GQ K;
  Matrix expected_A;              // -alpha h^{-1}
  bool A_matches = false;
  std::vector<GQ> B_stated;        // -alpha h^{ki} d_i(phi_0 + u_0)(0)
  std::vector<GQ> B_full;         // adds -1/2 h^{ki} A^{jl} d_i d_j d_l phi_{-1}(0)
  bool stated_formula_holds = false;
  bool full_formula_holds = false;
  std::vector<GQ> correction;     // B - B_stated
};

Lambda1Report lambda1_check(const PointDistribution& lambda, const PhasePair& p);

// -(2 nu / n) (d/dnu Lambda(f) - Lambda(df/dnu + d(phi+u)/dnu f)); rmax drops by one.
PointDistribution nu_transform(const PointDistribution& lambda, const PhasePair& p);

LaurentScalar strong_defect(const PointDistribution& lambda, const PhasePair& p);
// The constant b = nu b_1 + ... with strong_defect(lambda, p.shifted(b)) = 1.
LaurentScalar strong_normalize(const PointDistribution& lambda, const PhasePair& p);

struct RankCertificate {
  std::size_t size = 0;
  bool full_rank = false;
  std::vector<Exponents> basis;
  std::vector<std::vector<LaurentScalar>> gram;
  LaurentScalar determinant;
  std::vector<LaurentScalar> pivots;
};

// Gram matrix Lambda(x^{a+b}) for |a|,|b| <= d. Throws InsufficientTruncation when
// the truncation cannot certify a nonzero pivot.
RankCertificate pairing_rank(const PointDistribution& lambda, int d);

// (phi + u', u - u')
PhasePair equivalent_pair(const PhasePair& p, const WeightedJet& u_prime);

// tau is the volume coefficient against dz^1..dz^m dzbar^1..dzbar^m, itself a NormConstant.
NormConstant hermitian_model_constant(const PhasePair& p, const NormConstant& tau);

struct RealModelConstant {
  double magnitude = 0;
  bool sign_ambiguous = true;
};

// (2 pi)^{n/2} |tau| / sqrt|det(-h)|
RealModelConstant real_model_constant_numeric(const PhasePair& p, double tau = 1.0);

// Multi-indices of total degree <= d, by degree then lexicographically descending in x_1.
std::vector<Exponents> monomials_up_to(std::size_t n, int d);

}  // namespace oscint::foi
