#pragma once

#include "oscint/gaussian_rational.hpp"
#include "oscint/jet.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oscint::cli {

using json = nlohmann::ordered_json;

// Input problem that failed to parse or validate; `field` is a path such as "phase[2].coeff.re".
class ProblemError : public std::runtime_error {
 public:
  ProblemError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct Term {
  Exponents exponents;
  int nu = 0;
  GQ coeff;
};

// Polynomial in x and nu: merged, zero-free, sorted by (nu, exponents).
struct JetSpec {
  std::vector<Term> terms;

  static JetSpec normalized(std::vector<Term> terms);
  // Terms are taken as exact data and stored in a jet of the given weight.
  WeightedJet to_jet(const VarList& vars, int weight) const;
  int max_degree() const;
  bool empty() const { return terms.empty(); }
};

enum class Kind { Foi, Star, Kfoi, Laplace };

const char* to_string(Kind k);

struct Truncation {
  std::optional<int> order;
  std::optional<int> weight;  // nullopt means auto
};

struct Problem {
  Kind kind = Kind::Foi;
  std::size_t dimension = 0;
  VarList variables;
  Truncation truncation;

  std::optional<JetSpec> phase;        // foi, laplace
  std::optional<JetSpec> logdensity;   // foi
  std::optional<JetSpec> potential;    // star, kfoi
  std::vector<JetSpec> amplitudes;
  std::vector<std::pair<JetSpec, JetSpec>> products;  // star
  std::vector<int> directions;         // foi
  std::optional<int> degree;           // monomial degree cap for generated checks
  std::optional<int> l;                // kfoi
  std::optional<int> g_degree;         // kfoi
  std::vector<double> hs;              // laplace
  std::optional<double> box;           // laplace
};

Problem parse_problem(const json& j);
Problem parse_problem_text(const std::string& text);
Problem load_problem(const std::string& path);

// Canonical form: parse(render(p)) == p and render is byte-stable.
json render_problem(const Problem& p);

VarList default_variables(Kind k, std::size_t dimension);

}  // namespace oscint::cli
