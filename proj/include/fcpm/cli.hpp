#pragma once

// Command dispatch behind the fcpm tool. A command is described by a
// CommandOptions value; running it yields an output envelope
//   {"schema_version", "command", "result", "diagnostics"}
// whose "command" member is enough to run it again.

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "fcpm/io.hpp"

namespace fcpm {

inline const std::vector<std::string> kCommands = {"eval",       "phi",        "singular-poly",  "rank-check",
                                                   "verify-pde", "verify-integral", "domain-check"};

struct CommandOptions {
  std::string command;
  std::optional<int> p;
  std::optional<int> m;
  std::optional<Json> params;  ///< the parameter document, inlined
  std::optional<std::string> x;
  std::optional<std::string> z;
  std::optional<std::string> label;
  double tol = 1e-12;
  std::optional<ScalarMode> mode;
  std::uint64_t seed = 1;
  std::optional<int> order;
  int shells = 60;
  int draws = 10;
  int max_shells = 500;
};

Json to_json(const CommandOptions& o);
/// Throws ValidationError on unknown commands or malformed fields.
CommandOptions options_from_json(const Json& echo);

/// Runs the command and returns the success envelope. Library exceptions
/// propagate to the caller.
Json run_command(const CommandOptions& o);

/// Replays the "command" member of a previous envelope and compares the
/// freshly computed result with the recorded one.
Json replay(const Json& envelope);

/// 2 for rejected input (validation, domain, branch, mode, pole, hypothesis,
/// convergence), 1 for anything else.
int exit_code_for(const std::exception& e);

Json error_envelope(const std::optional<CommandOptions>& o, const std::exception& e);

/// FCPM_MAX_SHELLS, or kMaxShells when unset. Throws ValidationError if the
/// value is not a positive integer.
int max_shells_from_env();

}  // namespace fcpm
