/*
  pcmk: weighted Minkowski problems for C-pseudo-cones

  Usage
  -----
    pcmk solve <problem.json> [--seed N] [--tolerance X] [--out PATH] [--no-timing]
    pcmk evaluate <problem.json> [--tighten] [--tolerance X] [--out PATH] [--no-timing]
    pcmk verify <problem.json> --suite mc|gradient|continuity|lemma71|lemma72
                [--seed N] [--samples N] [--tolerance X] [--out PATH] [--no-timing]
    pcmk demo-nonuniqueness [problem.json] [--cone Q2|O3] [--kind K] [--q Q]
                [--out SVG] [--report PATH] [--no-timing]

  Reports are JSON and go to --out (demo: --report) or standard output.
  Diagnostics go to standard error.

  Exit codes
  ----------
    0  success
    1  internal error
    2  invalid input (parse errors, q outside (n-1,n), bad directions, ...)
    3  solver did not converge (report still written)
    4  verification failed
*/

#include "pcmk/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

namespace {

using namespace pcmk;

bool write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    return false;
  }
  return true;
}

int emit(const CommandResult& r, const std::string& report_path, const std::string& svg_path) {
  if (!r.diagnostic.empty()) std::cerr << r.diagnostic << "\n";
  if (r.report.is_null()) return r.exit_code;
  if (!write_text(report_path, dump_json(r.report))) return kExitInvalidInput;
  if (!svg_path.empty()) {
    if (r.svg.empty()) {
      std::cerr << "no SVG for n != 2; report only\n";
    } else if (!write_text(svg_path, r.svg)) {
      return kExitInvalidInput;
    }
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Minkowski problems for C-pseudo-cones"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PCMK_VERSION);

  std::string problem_path, out_path, report_path, suite;
  std::string demo_cone = "Q2", demo_kind = "height-power";
  double demo_q = 1.5;
  double tolerance = 0.0, samples = 1e6;
  std::uint64_t seed = 0;
  bool no_timing = false, tighten = false;

  auto common = [&](CLI::App* sub, bool tol) {
    sub->add_option("--out", out_path, "Output path (default: standard output)");
    sub->add_flag("--no-timing", no_timing, "Omit the timing field (byte-identical reports)");
    if (tol) sub->add_option("--tolerance", tolerance, "Override the tolerance")->check(CLI::PositiveNumber);
  };

  CLI::App* solve = app.add_subcommand("solve", "Solve for a body with the prescribed measure");
  solve->add_option("problem", problem_path, "Problem file")->required();
  solve->add_option("--seed", seed, "Restart seed");
  common(solve, true);

  CLI::App* evaluate = app.add_subcommand("evaluate", "Surface measure and covolume of a body");
  evaluate->add_option("problem", problem_path, "Problem file with a body section")->required();
  evaluate->add_flag("--tighten", tighten, "Replace support numbers by the tight ones first");
  common(evaluate, true);

  CLI::App* verify = app.add_subcommand("verify", "Run an oracle suite");
  verify->add_option("problem", problem_path, "Problem file")->required();
  verify->add_option("--suite", suite, "Suite")
      ->required()
      ->check(CLI::IsMember({"mc", "gradient", "continuity", "lemma71", "lemma72"}));
  verify->add_option("--seed", seed, "Sampling seed");
  verify->add_option("--samples", samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  common(verify, true);

  CLI::App* demo = app.add_subcommand("demo-nonuniqueness", "Two bodies with the same measure");
  demo->add_option("problem", problem_path, "Optional problem file (cone and weight)");
  demo->add_option("--cone", demo_cone, "Preset cone")->check(CLI::IsMember({"Q2", "O3"}));
  demo->add_option("--kind", demo_kind, "Weight kind")->check(CLI::IsMember({"radial-power", "height-power"}));
  demo->add_option("--q", demo_q, "Weight exponent");
  demo->add_option("--out", out_path, "SVG path (n = 2 only)");
  demo->add_option("--report", report_path, "Report path (default: standard output)");
  demo->add_flag("--no-timing", no_timing, "Omit the timing field");
  demo->add_option("--tolerance", tolerance, "Quadrature tolerance")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  RunOptions o;
  o.timing = !no_timing;
  o.tighten = tighten;
  o.suite = suite;
  if (tolerance > 0.0) o.tolerance = tolerance;
  if (solve->count("--seed") || verify->count("--seed")) o.seed = seed;
  if (samples != std::floor(samples) || samples > 1e15) {
    std::cerr << "--samples must be a positive integer\n";
    return kExitInvalidInput;
  }
  o.samples = static_cast<std::uint64_t>(samples);

  try {
    const CommandResult r = guarded([&]() -> CommandResult {
      if (demo->parsed()) {
        const Problem p = problem_path.empty() ? demo_problem(demo_cone, demo_kind, demo_q) : load_problem(problem_path);
        return cmd_demo_nonuniqueness(p, o);
      }
      const Problem p = load_problem(problem_path);
      if (solve->parsed()) return cmd_solve(p, o);
      if (evaluate->parsed()) return cmd_evaluate(p, o);
      return cmd_verify(p, o);
    });
    if (demo->parsed()) return emit(r, report_path, out_path);
    return emit(r, out_path, "");
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
