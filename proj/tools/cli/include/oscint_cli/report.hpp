#pragma once

#include "oscint_cli/problem.hpp"

#include <string>
#include <utility>
#include <vector>

namespace oscint::cli {

struct Residual {
  std::string name;
  std::string value;
  bool pass = false;
};

struct Report {
  json task;
  std::string inputs_hash;
  std::vector<std::pair<std::string, std::string>> results;
  std::vector<Residual> residuals;
  json table;  // laplace-validate error-vs-h rows, null otherwise
  double timing_ms = 0;

  bool pass() const;
  void result(std::string name, std::string value) { results.emplace_back(std::move(name), std::move(value)); }
  void residual(std::string name, std::string value, bool ok) {
    residuals.push_back({std::move(name), std::move(value), ok});
  }
};

std::string sha256_hex(const std::string& data);

json to_json(const Report& r, bool with_timing = true);
std::string to_text(const Report& r);

}  // namespace oscint::cli
