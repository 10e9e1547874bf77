#include "fcpm/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>

#include "fcpm/charvar.hpp"
#include "fcpm/diffops.hpp"
#include "fcpm/errors.hpp"
#include "fcpm/integral.hpp"
#include "fcpm/series.hpp"
#include "fcpm/singular.hpp"

namespace fcpm {

namespace {

struct Outcome {
  Json result;
  std::vector<std::string> warnings;
  double tolerance = 0.0;
  ScalarMode mode = ScalarMode::exact;
};

[[noreturn]] void missing(const std::string& command, const std::string& flag) {
  throw ValidationError(command + " needs " + flag, {flag + " is required"});
}

AnyParameterSet load_params(const CommandOptions& o) {
  if (!o.params) missing(o.command, "--params");
  auto ps = parse_params(*o.params);
  if (o.mode) ps = coerce(std::move(ps), *o.mode);
  return ps;
}

int params_m(const AnyParameterSet& ps) {
  return std::visit([](const auto& v) { return v.m(); }, ps);
}

int params_p(const AnyParameterSet& ps) {
  return std::visit([](const auto& v) { return v.p(); }, ps);
}

std::vector<Complex> load_x(const CommandOptions& o, int m) {
  if (!o.x) missing(o.command, "--x");
  auto x = parse_complex_point(*o.x);
  if (static_cast<int>(x.size()) != m) {
    throw ValidationError("point has the wrong dimension",
                          {"--x has " + std::to_string(x.size()) + " coordinates but m = " + std::to_string(m)});
  }
  return x;
}

SolutionLabel parse_label(const std::string& text, int p, int m) {
  std::vector<int> entries;
  std::string digits;
  auto flush = [&] {
    if (digits.empty()) return;
    entries.push_back(std::stoi(digits));
    digits.clear();
  };
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      digits += c;
    } else if (c == ',' || c == ' ' || c == '(' || c == ')' || c == '[' || c == ']') {
      flush();
    } else {
      throw ValidationError("malformed label", {"label " + text + " must look like (1,0)"});
    }
  }
  flush();
  if (static_cast<int>(entries.size()) != m) {
    throw ValidationError("malformed label", {"label " + text + " needs m = " + std::to_string(m) + " entries"});
  }
  for (int e : entries) {
    if (e < 0 || e > p) throw ValidationError("malformed label", {"label entries must lie in 0..p-1 (p may be written as 0)"});
  }
  return SolutionLabel(p, entries);
}

std::vector<SolutionLabel> labels_for(const CommandOptions& o, int p, int m) {
  if (o.label) return {parse_label(*o.label, p, m)};
  return all_labels(p, m);
}

template <class T>
Json json_list(const std::vector<T>& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(to_json(e));
  return out;
}

Json evaluation_json(const Evaluation& e) {
  Json r;
  r["value"] = to_json(e.value);
  r["N_used"] = e.n_used;
  r["tail_bound"] = e.tail_bound;
  r["converged"] = e.converged;
  return r;
}

Outcome cmd_eval(const CommandOptions& o) {
  auto ps = load_params(o);
  auto x = load_x(o, params_m(ps));
  Outcome out;
  out.tolerance = o.tol;
  out.mode = mode_of(ps);
  auto e = std::visit([&](const auto& v) { return evaluate(v, x, o.tol, o.max_shells); }, ps);
  out.result = evaluation_json(e);
  out.result["radius"] = domain_radius(x, params_p(ps));
  if (!e.converged) out.warnings.push_back("shell cap " + std::to_string(o.max_shells) + " reached before the tail estimate fell below tol");
  return out;
}

Outcome cmd_phi(const CommandOptions& o) {
  auto ps = load_params(o);
  auto x = load_x(o, params_m(ps));
  Outcome out;
  out.tolerance = o.tol;
  out.mode = mode_of(ps);
  std::visit(
      [&](const auto& v) {
        require_valid(v);
        auto ni = check_nonintegrality(v);
        for (const auto& f : ni.failures) out.warnings.push_back("non-integrality condition fails: " + f);
        Json sols = Json::array();
        for (const auto& label : labels_for(o, v.p(), v.m())) {
          auto ex = solution_exponents(v, label);
          auto e = evaluate_phi(v, label, x, o.tol, o.max_shells);
          Json s;
          s["label"] = label.to_string();
          s["mu"] = json_list(ex.mu);
          s["sigma"] = to_json(ex.sigma);
          auto ev = evaluation_json(e);
          for (auto& [k, val] : ev.items()) s[k] = val;
          if (!e.converged) out.warnings.push_back("Phi_" + label.to_string() + " hit the shell cap");
          sols.push_back(std::move(s));
        }
        out.result["solutions"] = std::move(sols);
        out.result["exponents_distinct"] = exponents_distinct(v);
      },
      ps);
  return out;
}

int require_pm(const CommandOptions& o, const std::optional<int>& v, const char* flag) {
  if (!v) missing(o.command, flag);
  return *v;
}

Outcome cmd_singular_poly(const CommandOptions& o) {
  const int p = require_pm(o, o.p, "--p");
  const int m = require_pm(o, o.m, "--m");
  if (p < 2 || m < 1) throw ValidationError("bad dimensions", {"need p >= 2 and m >= 1"});
  Outcome out;
  const auto& r = singular_polynomial(p, m);
  out.result["p"] = p;
  out.result["m"] = m;
  out.result["degree"] = r.total_degree();
  Json poly = poly_to_json(r);
  for (auto& [k, v] : poly.items()) out.result[k] = v;
  return out;
}

Outcome cmd_rank_check(const CommandOptions& o) {
  const int p = require_pm(o, o.p, "--p");
  if (p < 2) throw ValidationError("bad dimensions", {"need p >= 2"});
  std::vector<GaussRational> z;
  Outcome out;
  if (o.z) {
    z = parse_exact_point(*o.z);
    if (z.empty()) throw ValidationError("malformed point", {"--z needs at least one coordinate"});
    if (o.m && *o.m != static_cast<int>(z.size())) {
      throw ValidationError("point has the wrong dimension", {"--z has " + std::to_string(z.size()) + " coordinates but m = " + std::to_string(*o.m)});
    }
  } else {
    const int m = require_pm(o, o.m, "--m or --z");
    std::mt19937_64 rng(o.seed);
    z = sample_generic_point(p, m, rng);
    out.warnings.push_back("no --z given; sampled a certified generic point from --seed");
  }
  auto pt = make_point(p, z);
  auto r = rank_at(p, z);
  out.result["z"] = json_list(z);
  out.result["H"] = r.hilbert;
  if (r.rank) {
    out.result["rank"] = *r.rank;
  } else {
    out.result["rank"] = "infinite/undetermined";
  }
  out.result["drop"] = r.drop;
  out.result["d_max"] = r.d_max;
  out.result["on_coordinate_axes"] = pt.on_coordinate_axes;
  out.result["on_R_zero"] = pt.on_R_zero;
  return out;
}

Outcome cmd_verify_pde(const CommandOptions& o) {
  auto ps = load_params(o);
  const int order = o.order.value_or(10);
  if (order < 1) throw ValidationError("bad order", {"--order must be at least 1"});
  Outcome out;
  out.mode = mode_of(ps);
  out.tolerance = out.mode == ScalarMode::exact ? 0.0 : 1e-9;
  std::visit(
      [&](const auto& v) {
        require_generic(v);
        Json rows = Json::array();
        bool all = true;
        for (const auto& label : labels_for(o, v.p(), v.m())) {
          auto res = annihilation_residual(v, label, order);
          Json row;
          row["label"] = label.to_string();
          row["vanishes"] = res.vanishes;
          row["max_abs"] = res.max_abs;
          row["scale"] = res.scale;
          all = all && res.vanishes;
          rows.push_back(std::move(row));
        }
        out.result["order"] = order;
        out.result["labels"] = std::move(rows);
        out.result["all_vanish"] = all;
        out.result["exponents_distinct"] = exponents_distinct(v);
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ParameterSet<GaussRational>>) {
          out.result["recurrence_holds"] = coefficient_recurrence_check(v, order);
        }
      },
      ps);
  return out;
}

Outcome cmd_verify_integral(const CommandOptions& o) {
  auto ps = load_params(o);
  const int order = o.order.value_or(6);
  if (order < 0) throw ValidationError("bad order", {"--order must be nonnegative"});
  constexpr double kTol = 1e-9;
  Outcome out;
  out.mode = mode_of(ps);
  out.tolerance = kTol;
  std::visit(
      [&](const auto& v) {
        require_valid(v);
        Json rows = Json::array();
        double worst = 0.0;
        for (int d = 0; d <= order; ++d) {
          for (const auto& n : shell(v.m(), d)) {
            Complex via = coefficient_via_integral(v, n);
            Complex direct = to_complex(coefficient(v, n));
            double rel = std::abs(via - direct) / std::max(std::abs(direct), 1e-300);
            worst = std::max(worst, rel);
            Json row;
            row["n"] = n.n;
            row["via_integral"] = to_json(via);
            row["series"] = to_json(direct);
            row["rel_diff"] = rel;
            rows.push_back(std::move(row));
          }
        }
        out.result["order"] = order;
        out.result["coefficients"] = std::move(rows);
        out.result["max_rel_diff"] = worst;
        out.result["pass"] = worst <= kTol;

        std::mt19937_64 rng(o.seed);
        std::uniform_real_distribution<double> re(0.2, 3.0);
        std::uniform_real_distribution<double> im(-1.0, 1.0);
        Json draws = Json::array();
        bool dirichlet_ok = true;
        for (int i = 0; i < o.draws; ++i) {
          Complex s0(re(rng), im(rng));
          std::vector<Complex> s;
          for (int k = 0; k < std::min(v.m(), 2); ++k) s.emplace_back(re(rng), im(rng));
          auto di = dirichlet_integral(s0, s);
          Json row;
          row["s0"] = to_json(s0);
          row["s"] = json_list(s);
          row["quadrature"] = to_json(di.quadrature);
          row["closed_form"] = to_json(di.closed_form);
          row["rel_diff"] = di.rel_diff();
          row["nodes"] = di.order;
          dirichlet_ok = dirichlet_ok && di.rel_diff() <= 1e-6;
          draws.push_back(std::move(row));
        }
        out.result["dirichlet"] = std::move(draws);
        out.result["dirichlet_pass"] = dirichlet_ok;
      },
      ps);
  return out;
}

Outcome cmd_domain_check(const CommandOptions& o) {
  std::optional<AnyParameterSet> ps;
  if (o.params) ps = load_params(o);
  const int p = ps ? params_p(*ps) : require_pm(o, o.p, "--p or --params");
  if (p < 2) throw ValidationError("bad dimensions", {"need p >= 2"});
  if (!o.x) missing(o.command, "--x");
  auto x = parse_complex_point(*o.x);
  if (x.empty()) throw ValidationError("malformed point", {"--x needs at least one coordinate"});
  if (ps && params_m(*ps) != static_cast<int>(x.size())) {
    throw ValidationError("point has the wrong dimension", {"--x does not match m of --params"});
  }
  Outcome out;
  out.tolerance = 1e-12;
  out.mode = ps ? mode_of(*ps) : ScalarMode::floating;
  out.result["p"] = p;
  out.result["radius"] = domain_radius(x, p);
  out.result["in_domain"] = in_domain(x, p);
  out.result["on_singular_locus"] = on_singular_locus(std::span<const Complex>(x), p);
  if (ps) {
    auto probe = std::visit([&](const auto& v) { return divergence_probe(v, x, o.shells); }, *ps);
    Json pr;
    pr["shells"] = o.shells;
    pr["max_term"] = probe.max_term;
    pr["log_first_shell"] = probe.log_first_shell;
    pr["log_last_shell"] = probe.log_last_shell;
    pr["growing"] = probe.growing;
    out.result["probe"] = std::move(pr);
  }
  return out;
}

Outcome dispatch(const CommandOptions& o) {
  if (o.command == "eval") return cmd_eval(o);
  if (o.command == "phi") return cmd_phi(o);
  if (o.command == "singular-poly") return cmd_singular_poly(o);
  if (o.command == "rank-check") return cmd_rank_check(o);
  if (o.command == "verify-pde") return cmd_verify_pde(o);
  if (o.command == "verify-integral") return cmd_verify_integral(o);
  if (o.command == "domain-check") return cmd_domain_check(o);
  throw ValidationError("unknown command", {"command " + o.command + " is not one of the fcpm subcommands"});
}

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const BranchError*>(&e)) return "BranchError";
  if (dynamic_cast<const ModeError*>(&e)) return "ModeError";
  if (dynamic_cast<const PoleError*>(&e)) return "PoleError";
  if (dynamic_cast<const HypothesisError*>(&e)) return "HypothesisError";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "ConvergenceError";
  if (dynamic_cast<const InvarianceError*>(&e)) return "InvarianceError";
  return "InternalError";
}

}  // namespace

Json to_json(const CommandOptions& o) {
  Json j;
  j["command"] = o.command;
  if (o.p) j["p"] = *o.p;
  if (o.m) j["m"] = *o.m;
  if (o.params) j["params"] = *o.params;
  if (o.x) j["x"] = *o.x;
  if (o.z) j["z"] = *o.z;
  if (o.label) j["label"] = *o.label;
  j["tol"] = o.tol;
  if (o.mode) j["mode"] = to_string(*o.mode);
  j["seed"] = o.seed;
  if (o.order) j["order"] = *o.order;
  j["shells"] = o.shells;
  j["draws"] = o.draws;
  j["max_shells"] = o.max_shells;
  return j;
}

CommandOptions options_from_json(const Json& echo) {
  if (!echo.is_object() || !echo.contains("command") || !echo["command"].is_string()) {
    throw ValidationError("malformed command echo", {"\"command\" must name a subcommand"});
  }
  CommandOptions o;
  try {
    o.command = echo["command"].get<std::string>();
    if (echo.contains("p")) o.p = echo["p"].get<int>();
    if (echo.contains("m")) o.m = echo["m"].get<int>();
    if (echo.contains("params")) o.params = echo["params"];
    if (echo.contains("x")) o.x = echo["x"].get<std::string>();
    if (echo.contains("z")) o.z = echo["z"].get<std::string>();
    if (echo.contains("label")) o.label = echo["label"].get<std::string>();
    if (echo.contains("tol")) o.tol = echo["tol"].get<double>();
    if (echo.contains("mode")) {
      auto mode = echo["mode"].get<std::string>();
      if (mode != "exact" && mode != "float") throw ValidationError("malformed command echo", {"mode must be exact or float"});
      o.mode = mode == "exact" ? ScalarMode::exact : ScalarMode::floating;
    }
    if (echo.contains("seed")) o.seed = echo["seed"].get<std::uint64_t>();
    if (echo.contains("order")) o.order = echo["order"].get<int>();
    if (echo.contains("shells")) o.shells = echo["shells"].get<int>();
    if (echo.contains("draws")) o.draws = echo["draws"].get<int>();
    if (echo.contains("max_shells")) o.max_shells = echo["max_shells"].get<int>();
  } catch (const Json::exception& e) {
    throw ValidationError("malformed command echo", {e.what()});
  }
  if (std::find(kCommands.begin(), kCommands.end(), o.command) == kCommands.end()) {
    throw ValidationError("unknown command", {"command " + o.command + " is not one of the fcpm subcommands"});
  }
  return o;
}

Json run_command(const CommandOptions& o) {
  Outcome r = dispatch(o);
  Json env;
  env["schema_version"] = kSchemaVersion;
  env["command"] = to_json(o);
  env["result"] = std::move(r.result);
  Json diag;
  diag["warnings"] = r.warnings;
  diag["tolerance"] = r.tolerance;
  diag["mode"] = r.mode == ScalarMode::exact ? "exact" : "float";
  diag["max_shells"] = o.max_shells;
  env["diagnostics"] = std::move(diag);
  return env;
}

Json replay(const Json& envelope) {
  if (!envelope.is_object() || !envelope.contains("command") || !envelope.contains("result")) {
    throw ValidationError("malformed envelope", {"a replay input needs \"command\" and \"result\" members"});
  }
  auto o = options_from_json(envelope["command"]);
  Json fresh = run_command(o);
  Json env;
  env["schema_version"] = kSchemaVersion;
  Json cmd;
  cmd["command"] = "check";
  cmd["replayed"] = envelope["command"];
  env["command"] = std::move(cmd);
  Json res;
  res["replayed"] = o.command;
  res["match"] = fresh["result"] == envelope["result"];
  env["result"] = std::move(res);
  Json diag;
  diag["warnings"] = Json::array();
  diag["tolerance"] = 0.0;
  diag["mode"] = fresh["diagnostics"]["mode"];
  diag["max_shells"] = o.max_shells;
  env["diagnostics"] = std::move(diag);
  return env;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const BranchError*>(&e) || dynamic_cast<const ModeError*>(&e) ||
      dynamic_cast<const PoleError*>(&e) || dynamic_cast<const HypothesisError*>(&e) ||
      dynamic_cast<const ConvergenceError*>(&e)) {
    return 2;
  }
  return 1;
}

Json error_envelope(const std::optional<CommandOptions>& o, const std::exception& e) {
  Json env;
  env["schema_version"] = kSchemaVersion;
  env["command"] = o ? to_json(*o) : Json(nullptr);
  env["result"] = nullptr;
  Json err;
  err["type"] = error_type(e);
  err["message"] = e.what();
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    err["conditions"] = v->conditions();
  } else {
    err["conditions"] = Json::array({e.what()});
  }
  Json diag;
  diag["warnings"] = Json::array();
  if (o) {
    diag["tolerance"] = o->tol;
    if (o->mode) diag["mode"] = to_string(*o->mode);
  }
  diag["error"] = std::move(err);
  env["diagnostics"] = std::move(diag);
  return env;
}

int max_shells_from_env() {
  const char* raw = std::getenv("FCPM_MAX_SHELLS");
  if (!raw || !*raw) return kMaxShells;
  char* end = nullptr;
  long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 1 || v > 100000) {
    throw ValidationError("bad environment", {std::string("FCPM_MAX_SHELLS = ") + raw + " is not a positive integer"});
  }
  return static_cast<int>(v);
}

}  // namespace fcpm
