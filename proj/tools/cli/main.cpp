#include "oscint_cli/problem.hpp"
#include "oscint_cli/report.hpp"
#include "oscint_cli/tasks.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  using namespace oscint::cli;
  CLI::App app{"Exact formal oscillatory integral and star product checks"};
  app.require_subcommand(1);

  struct Args {
    std::string path;
    std::optional<int> order, weight;
    bool json = false, no_timing = false;
    std::string out;
  } args;

  for (const auto& [name, sub] : subcommands()) {
    CLI::App* cmd = app.add_subcommand(name, std::string("run the ") + name + " task on a " +
                                                 to_string(expected_kind(sub)) + " problem file");
    cmd->add_option("problem", args.path, "problem file (JSON)")->required();
    cmd->add_option("--order", args.order, "nu-order R to check through");
    cmd->add_option("--weight", args.weight, "input truncation weight W");
    cmd->add_flag("--json", args.json, "print the JSON report instead of text");
    cmd->add_option("--out", args.out, "also write the JSON report to this path");
    cmd->add_flag("--no-timing", args.no_timing, "omit timing_ms from JSON output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Subcommand sub{};
  for (const auto& [name, s] : subcommands())
    if (app.got_subcommand(name)) sub = s;

  try {
    Problem p = load_problem(args.path);
    Report r = run_task(sub, p, {args.order, args.weight});
    std::string js = to_json(r, !args.no_timing).dump(2) + "\n";
    if (!args.out.empty()) {
      std::ofstream out(args.out);
      if (!out) {
        std::cerr << "error: cannot write " << args.out << "\n";
        return 2;
      }
      out << js;
    }
    std::cout << (args.json ? js : to_text(r));
    return r.pass() ? 0 : 1;
  } catch (const ProblemError& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const TaskError& e) {
    std::cerr << "engine error in " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
