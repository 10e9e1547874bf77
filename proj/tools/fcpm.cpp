// fcpm: command-line front end. Every command prints one JSON envelope on
// standard output. Exit status 0 on success, 2 when the input is rejected,
// 1 on internal errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fcpm/cli.hpp"
#include "fcpm/errors.hpp"

namespace {

struct Descr {
  const char* name;
  const char* help;
};

constexpr Descr kDescriptions[] = {
    {"eval", "evaluate F_C^{p,m}(a,B;x) inside the convergence domain"},
    {"phi", "evaluate the fundamental solutions Phi_J (all labels unless --label)"},
    {"singular-poly", "print the defining polynomial R(x) of the singular locus"},
    {"rank-check", "Hilbert function and rank of the symbol ideal at a point z"},
    {"verify-pde", "apply the annihilating operators to truncated Phi_J"},
    {"verify-integral", "compare integral-representation coefficients with the series"},
    {"domain-check", "convergence domain, singular locus and divergence probe at x"},
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fcpm::ValidationError("cannot read input", {"cannot open " + path});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fcpm::Json parse_json_file(const std::string& path) {
  try {
    return fcpm::Json::parse(read_file(path));
  } catch (const fcpm::Json::parse_error& e) {
    throw fcpm::ValidationError("invalid JSON", {path + ": " + e.what()});
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toolkit for the hypergeometric family F_C^{p,m}(a,B;x)", "fcpm"};
  app.require_subcommand(0, 1);

  std::string check_file;
  bool pretty = false;
  bool compact = false;
  app.add_option("--check", check_file, "Replay a saved output envelope and compare the result");
  app.add_flag("--pretty", pretty, "Indent the JSON output");
  app.add_flag("--json", compact, "Compact JSON output (default)");

  fcpm::CommandOptions o;
  int p = 0;
  int m = 0;
  int order = 0;
  std::string params_file;
  std::string mode;
  std::string x;
  std::string z;
  std::string label;

  std::vector<CLI::App*> subs;
  for (const auto& d : kDescriptions) {
    auto* sub = app.add_subcommand(d.name, d.help);
    sub->add_option("--p", p, "Number of numerator parameters")->check(CLI::Range(2, 64));
    sub->add_option("--m", m, "Number of variables")->check(CLI::Range(1, 64));
    sub->add_option("--params", params_file, "JSON parameter document {\"p\",\"m\",\"a\",\"B\"}");
    sub->add_option("--x", x, "Point, e.g. \"[0.04,0.04]\" or \"[[0.1,0.2],0.3]\"");
    sub->add_option("--z", z, "Exact point in covering coordinates, e.g. \"[1/3,1/5]\"");
    sub->add_option("--label", label, "Solution label J, e.g. \"(1,0)\"");
    sub->add_option("--tol", o.tol, "Absolute tolerance for series evaluation")->check(CLI::PositiveNumber);
    sub->add_option("--mode", mode, "Scalar mode")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--seed", o.seed, "Seed for random draws");
    sub->add_option("--order", order, "Truncation order |n| <= N for verification commands");
    sub->add_option("--shells", o.shells, "Shells scanned by the divergence probe")->check(CLI::Range(1, 100000));
    sub->add_option("--draws", o.draws, "Random simplex integrals checked by verify-integral")->check(CLI::Range(0, 10000));
    sub->add_flag("--pretty", pretty, "Indent the JSON output");
    sub->add_flag("--json", compact, "Compact JSON output (default)");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const int indent = pretty ? 2 : -1;
  std::optional<fcpm::CommandOptions> echo;
  try {
    if (!check_file.empty()) {
      auto env = fcpm::replay(parse_json_file(check_file));
      std::cout << env.dump(indent) << "\n";
      return env["result"]["match"].get<bool>() ? 0 : 2;
    }
    const CLI::App* chosen = nullptr;
    for (const auto* s : subs) {
      if (s->parsed()) chosen = s;
    }
    if (!chosen) {
      std::cerr << app.help();
      return 2;
    }
    o.command = chosen->get_name();
    if (chosen->count("--p")) o.p = p;
    if (chosen->count("--m")) o.m = m;
    if (chosen->count("--order")) o.order = order;
    if (chosen->count("--x")) o.x = x;
    if (chosen->count("--z")) o.z = z;
    if (chosen->count("--label")) o.label = label;
    if (!mode.empty()) o.mode = mode == "exact" ? fcpm::ScalarMode::exact : fcpm::ScalarMode::floating;
    echo = o;
    o.max_shells = fcpm::max_shells_from_env();
    if (!params_file.empty()) o.params = parse_json_file(params_file);
    echo = o;
    std::cout << fcpm::run_command(o).dump(indent) << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cout << fcpm::error_envelope(echo, e).dump(indent) << "\n";
    return fcpm::exit_code_for(e);
  }
}
