#include "oscint/oracles.hpp"

#include "oscint/error.hpp"
#include "oscint/foi.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace oscint::oracles {

namespace {

constexpr int kExactWeight = 1 << 16;

using Poly = std::map<std::pair<int, Exponents>, GQ>;

int degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

Poly to_poly(const WeightedJet& j, int max_weight) {
  Poly p;
  for (const auto& [mono, c] : j.terms())
    if (mono.weight() <= max_weight) p[{mono.nu, mono.exps}] = c;
  return p;
}

Poly multiply(const Poly& a, const Poly& b, int max_weight) {
  Poly out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      Exponents e = ka.second;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += kb.second[i];
      int nu = ka.first + kb.first;
      if (2 * nu + degree(e) > max_weight) continue;
      GQ& slot = out[{nu, e}];
      slot += ca * cb;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

class MomentTable {
 public:
  explicit MomentTable(const Matrix& c) : c_(c) {}

  // E[x^alpha] with nu = 1: pick the first letter and pair it with every other letter.
  GQ get(const Exponents& alpha) {
    int d = degree(alpha);
    if (d == 0) return GQ(1);
    if (d % 2) return GQ(0);
    auto it = memo_.find(alpha);
    if (it != memo_.end()) return it->second;
    std::size_t i = 0;
    while (alpha[i] == 0) ++i;
    Exponents rest = alpha;
    --rest[i];
    GQ sum(0);
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if (rest[j] == 0 || c_(i, j).is_zero()) continue;
      Exponents r2 = rest;
      --r2[j];
      sum += c_(i, j) * GQ(rest[j]) * get(r2);
    }
    memo_.emplace(alpha, sum);
    return sum;
  }

 private:
  const Matrix& c_;
  std::map<Exponents, GQ> memo_;
};

struct NumericPoly {
  std::vector<std::pair<double, Exponents>> terms;

  double operator()(const double* x) const {
    double s = 0;
    for (const auto& [c, e] : terms) {
      double t = c;
      for (std::size_t i = 0; i < e.size(); ++i) t *= std::pow(x[i], e[i]);
      s += t;
    }
    return s;
  }
};

NumericPoly numeric(const WeightedJet& j, const char* what) {
  NumericPoly p;
  for (const auto& [mono, c] : j.terms()) {
    if (mono.nu != 0) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be nu-free");
    if (!c.is_real()) throw Error(ErrorKind::NotRealData, std::string(what) + " has a non-real coefficient");
    p.terms.emplace_back(c.re().get_d(), mono.exps);
  }
  return p;
}

}  // namespace

WickCovariance::WickCovariance(Matrix cov) : c(std::move(cov)) {
  if (!c.is_symmetric()) throw Error(ErrorKind::InvalidArgument, "covariance must be symmetric");
}

WickCovariance WickCovariance::from_hessian(const Matrix& h) { return WickCovariance(inverse(h).scaled(GQ(-1))); }

LaurentScalar wick_moment(const WickCovariance& cov, const Exponents& alpha) {
  if (alpha.size() != cov.c.rows()) throw Error(ErrorKind::VariableMismatch, "multi-index does not match covariance");
  int d = degree(alpha);
  if (d % 2) return LaurentScalar(GQ(0));
  MomentTable table(cov.c);
  return LaurentScalar::monomial(table.get(alpha), d / 2);
}

LaurentScalar wick_expectation(const WickCovariance& cov, const WeightedJet& perturbation, const WeightedJet& f,
                               int order) {
  const int w = 2 * order;
  if (perturbation.weight() < w) throw InsufficientTruncation("wick_expectation perturbation", w, perturbation.weight());
  if (f.weight() < w) throw InsufficientTruncation("wick_expectation amplitude", w, f.weight());
  for (const auto& [mono, c] : perturbation.terms())
    if (mono.weight() < 1) throw Error(ErrorKind::InvalidArgument, "perturbation must have positive weight");
  Poly p = to_poly(perturbation, w);
  Poly term = to_poly(f, w), sum = term;
  for (int k = 1; k <= w && !term.empty(); ++k) {
    term = multiply(term, p, w);
    for (auto& [key, c] : term) c *= GQ::rational(1, k);
    for (const auto& [key, c] : term) sum[key] += c;
  }
  MomentTable table(cov.c);
  LaurentScalar out(GQ(0), order);
  for (const auto& [key, c] : sum) {
    int d = degree(key.second);
    if (d % 2 || c.is_zero()) continue;
    out.add_term(key.first + d / 2, c * table.get(key.second));
  }
  return out;
}

std::vector<NamedJet> commutation_residuals(const sep::KahlerPotential& phi, const DiffOperator& a,
                                            const WeightedJet& f, const std::vector<WeightedJet>& tests) {
  std::vector<NamedJet> out;
  const VarList& vars = phi.vars();
  for (std::size_t t = 0; t < tests.size(); ++t) {
    const WeightedJet& g = tests[t];
    WeightedJet ag = op_apply(a, g);
    for (std::size_t l = 0; l < phi.m(); ++l) {
      const std::string& name = vars[phi.anti(l)];
      WeightedJet zl = WeightedJet::variable(vars, name, kExactWeight);
      out.push_back({"[A," + name + "](g" + std::to_string(t) + ")",
                     op_apply(a, multiply_full(zl, g)) - multiply_full(zl, ag)});
      WeightedJet dphi = derive(phi.phi(), phi.anti(l));
      WeightedJet lhs = op_apply(a, derive(g, phi.anti(l)) + multiply_full(dphi, g));
      WeightedJet rhs = derive(ag, phi.anti(l)) + multiply_full(dphi, ag);
      out.push_back({"[A,d_" + name + "+dPhi](g" + std::to_string(t) + ")", lhs - rhs});
    }
  }
  out.push_back({"A1-f", op_apply(a, WeightedJet::constant(vars, GQ(1), kExactWeight)) - f});
  return out;
}

LaplaceTable laplace_validate(const WeightedJet& psi, const WeightedJet& f, const std::vector<double>& hs, int order,
                              const LaplaceConfig& config) {
  const std::size_t n = psi.nvars();
  if (n == 0 || n > 2) throw Error(ErrorKind::InvalidArgument, "laplace_validate supports one or two variables");
  if (!f.same_vars(psi)) throw Error(ErrorKind::VariableMismatch, "phase and amplitude use different variables");
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "order must be non-negative");
  NumericPoly npsi = numeric(psi, "phase"), nf = numeric(f, "amplitude");

  const int w = 2 * order + 4;
  WeightedJet phase = psi.promoted(w + 2).nu_shift(-1);
  foi::PhasePair pair = foi::PhasePair::flat_density(phase);
  foi::PhaseSplit split = foi::phase_split(pair);
  const Matrix& h = split.hessian.h;
  bool negative = n == 1 ? h(0, 0).re() < 0
                         : (h(0, 0).re() < 0 && determinant(h).re() > 0);
  if (!negative) throw Error(ErrorKind::PositiveDirection, "Hessian of the phase is not negative definite");

  LaplaceTable table;
  table.order = order;
  table.model_constant = foi::real_model_constant_numeric(pair).magnitude;
  PointDistribution lambda = foi::construct_foi(pair, order);
  LaurentScalar series = lambda.apply(f.promoted(w), order);

  using boost::math::quadrature::gauss_kronrod;
  const double b = config.box_half_width;
  for (double hv : hs) {
    if (!(hv > 0)) throw Error(ErrorKind::InvalidArgument, "h must be positive");
    double worst = 0;
    auto integrate = [&](auto&& fun) {
      double err = 0, l1 = 0;
      double v = gauss_kronrod<double, 61>::integrate(fun, -b, b, config.max_depth, config.rel_tol, &err, &l1);
      worst = std::max(worst, err / std::max(l1, std::numeric_limits<double>::min()));
      return v;
    };
    double x[2] = {0, 0};
    auto integrand = [&](auto&& amp) {
      return [&, amp](double t) {
        x[n - 1] = t;
        return std::exp(npsi(x) / hv) * amp(x);
      };
    };
    auto value = [&](auto&& amp) {
      if (n == 1) return integrate(integrand(amp));
      return integrate([&](double s) {
        x[0] = s;
        double inner = integrate([&](double t) {
          x[1] = t;
          return std::exp(npsi(x) / hv) * amp(x);
        });
        x[0] = s;
        return inner;
      });
    };
    double raw = value([&](const double* p) { return nf(p); });
    if (worst > 100 * config.rel_tol)
      throw Error(ErrorKind::QuadratureFailure, "quadrature did not reach the requested tolerance at h = " + std::to_string(hv));
    LaplaceRow row;
    row.h = hv;
    row.quadrature = raw * std::pow(hv, -static_cast<double>(n) / 2) / table.model_constant;
    for (const auto& [k, c] : series.coeffs()) row.series += c.re().get_d() * std::pow(hv, k);
    row.abs_error = std::abs(row.quadrature - row.series);
    row.rel_error = row.quadrature != 0 ? row.abs_error / std::abs(row.quadrature) : row.abs_error;
    table.rows.push_back(row);
  }

  std::vector<std::pair<double, double>> pts;
  for (const auto& r : table.rows)
    if (r.abs_error > 0) pts.emplace_back(std::log(r.h), std::log(r.abs_error));
  if (pts.size() < 2) {
    table.slope = std::numeric_limits<double>::quiet_NaN();
  } else {
    double mx = 0, my = 0;
    for (const auto& [px, py] : pts) {
      mx += px;
      my += py;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0, sxx = 0;
    for (const auto& [px, py] : pts) {
      sxy += (px - mx) * (py - my);
      sxx += (px - mx) * (px - mx);
    }
    table.slope = sxy / sxx;
  }
  return table;
}

}  // namespace oscint::oracles
