#pragma once

#include "oscint_cli/problem.hpp"
#include "oscint_cli/report.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oscint::cli {

enum class Subcommand { Construct, CheckFoi, Star, Berezin, DualPotential, TraceDensity, KfoiCheck, LaplaceValidate };

const std::vector<std::pair<std::string, Subcommand>>& subcommands();
const char* to_string(Subcommand s);
// The problem kind each subcommand accepts.
Kind expected_kind(Subcommand s);

struct RunOptions {
  std::optional<int> order;   // overrides truncation.order
  std::optional<int> weight;  // overrides truncation.weight
};

// Engine failure, tagged with the library operation that raised it.
class TaskError : public std::runtime_error {
 public:
  TaskError(std::string operation, const std::string& what)
      : std::runtime_error(operation + ": " + what), operation_(std::move(operation)) {}
  const std::string& operation() const noexcept { return operation_; }

 private:
  std::string operation_;
};

// Throws ProblemError for input errors and TaskError for engine errors.
Report run_task(Subcommand s, const Problem& p, const RunOptions& opts = {});

}  // namespace oscint::cli
