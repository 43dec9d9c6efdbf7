#include "oscint_cli/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

namespace oscint::cli {

bool Report::pass() const {
  return std::all_of(residuals.begin(), residuals.end(), [](const Residual& r) { return r.pass; });
}

std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr);
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

json to_json(const Report& r, bool with_timing) {
  json out;
  out["task"] = r.task;
  out["inputs_hash"] = r.inputs_hash;
  json results = json::array();
  for (const auto& [name, value] : r.results) results.push_back({{"name", name}, {"value", value}});
  out["results"] = results;
  json residuals = json::array();
  for (const auto& x : r.residuals) residuals.push_back({{"name", x.name}, {"value", x.value}, {"pass", x.pass}});
  out["residuals"] = residuals;
  if (!r.table.is_null()) out["table"] = r.table;
  out["pass"] = r.pass();
  if (with_timing) out["timing_ms"] = r.timing_ms;
  return out;
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  os << "task: " << r.task.value("subcommand", "") << " (" << r.task.value("kind", "") << ")\n";
  os << "inputs: " << r.inputs_hash << "\n";
  for (const auto& [name, value] : r.results) os << name << " = " << value << "\n";
  if (r.table.is_array() && !r.table.empty()) {
    os << "\n         h      quadrature          series       abs_error       rel_error\n";
    for (const auto& row : r.table) {
      char line[160];
      std::snprintf(line, sizeof line, "%10.4g  %14.10g  %14.10g  %14.4e  %14.4e\n", row["h"].get<double>(),
                    row["quadrature"].get<double>(), row["series"].get<double>(), row["abs_error"].get<double>(),
                    row["rel_error"].get<double>());
      os << line;
    }
  }
  std::size_t failed = 0;
  for (const auto& x : r.residuals) {
    if (!x.pass) ++failed;
    os << (x.pass ? "  ok    " : "  FAIL  ") << x.name << " = " << x.value << "\n";
  }
  os << (r.pass() ? "PASS" : "FAIL") << " (" << r.residuals.size() - failed << "/" << r.residuals.size()
     << " checks, " << static_cast<long>(r.timing_ms) << " ms)\n";
  return os.str();
}

}  // namespace oscint::cli
