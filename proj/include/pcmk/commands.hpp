#pragma once

#include "pcmk/io.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace pcmk {

// Process exit codes of the pcmk tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,       // unexpected failure (bug)
  kExitInvalidInput = 2,
  kExitNotConverged = 3,
  kExitVerification = 4,
};

int exit_code_for(Errc code);

struct RunOptions {
  std::optional<double> tolerance;  // solver residual (solve, lemma71) or quadrature (evaluate)
  std::optional<std::uint64_t> seed;
  std::uint64_t samples = 1000000;
  bool timing = true;
  bool tighten = false;             // evaluate: replace h by h̄ before measuring
  std::string suite;                // verify: mc, gradient, continuity, lemma71, lemma72
};

struct CommandResult {
  int exit_code = kExitOk;
  Json report;
  std::string svg;         // demo-nonuniqueness, n = 2 only
  std::string diagnostic;  // one line for standard error, empty on success
};

CommandResult cmd_solve(const Problem& p, const RunOptions& o);
CommandResult cmd_evaluate(const Problem& p, const RunOptions& o);
CommandResult cmd_verify(const Problem& p, const RunOptions& o);
/// Uses the problem's cone, weight and quadrature settings only.
CommandResult cmd_demo_nonuniqueness(const Problem& p, const RunOptions& o);

/// Runs a command and converts library errors into an exit code and diagnostic.
template <class Fn>
CommandResult guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    CommandResult r;
    r.exit_code = exit_code_for(e.code());
    r.diagnostic = e.what();
    return r;
  }
}

/// Problem for the demo without a file: preset cone Q2 or O3.
Problem demo_problem(const std::string& cone, const std::string& kind, double q);

}  // namespace pcmk
