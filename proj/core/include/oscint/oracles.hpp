#pragma once

#include "oscint/diff_operator.hpp"
#include "oscint/jet.hpp"
#include "oscint/laurent.hpp"
#include "oscint/matrix.hpp"
#include "oscint/sep_vars.hpp"

#include <string>
#include <vector>

namespace oscint::oracles {

// C^{ij} = -h^{ij}; each pairing of x^i with x^j contributes nu C^{ij}.
struct WickCovariance {
  Matrix c;

  explicit WickCovariance(Matrix cov);
  static WickCovariance from_hessian(const Matrix& h);
};

// Sum over perfect matchings of the letters of x^alpha.
LaurentScalar wick_moment(const WickCovariance& cov, const Exponents& alpha);

// Gaussian expectation of e^{p} f through nu^order, where p = nu^{-1} chi + phi~ is a
// perturbation with every term of positive weight. Expands the exponential directly.
LaurentScalar wick_expectation(const WickCovariance& cov, const WeightedJet& perturbation, const WeightedJet& f,
                               int order);

struct NamedJet {
  std::string name;
  WeightedJet value;
};

// [A, zbar^l] g, [A, d_{zbar^l} + d Phi / d zbar^l] g for every test jet g and A1 - f.
std::vector<NamedJet> commutation_residuals(const sep::KahlerPotential& phi, const DiffOperator& a,
                                            const WeightedJet& f, const std::vector<WeightedJet>& tests);

struct LaplaceConfig {
  double box_half_width = 1.0;  // integration box [-b, b]^n
  double rel_tol = 1e-9;
  unsigned max_depth = 20;
};

struct LaplaceRow {
  double h = 0;
  double quadrature = 0;  // h^{-n/2} int e^{psi/h} f dx divided by the model constant
  double series = 0;      // formal series through nu^R at nu = h
  double abs_error = 0;
  double rel_error = 0;
};

struct LaplaceTable {
  std::vector<LaplaceRow> rows;
  int order = 0;
  double model_constant = 0;
  // least-squares slope of log(abs_error) against log(h); NaN with fewer than two nonzero errors
  double slope = 0;
};

// psi and f are polynomials in at most two variables, taken as exact.
LaplaceTable laplace_validate(const WeightedJet& psi, const WeightedJet& f, const std::vector<double>& hs, int order,
                              const LaplaceConfig& config = {});

}  // namespace oscint::oracles
