#include "pcmk/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#ifndef PCMK_VERSION
#define PCMK_VERSION "0.0.0"
#endif

namespace pcmk {

namespace {

using Clock = std::chrono::steady_clock;

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

// Residual tolerance per dimension for identities checked in the suites.
double identity_tol(int dim) { return dim <= 2 ? 1e-8 : 1e-6; }

Problem with_overrides(const Problem& p, const RunOptions& o) {
  Problem q = p;
  if (o.seed) q.solver.seed = *o.seed;
  return q;
}

Json header(const char* command, const Problem& p) {
  Json j;
  j["tool"] = "pcmk";
  j["version"] = PCMK_VERSION;
  j["command"] = command;
  j["seed"] = p.solver.seed;
  j["problem"] = p.to_json();
  return j;
}

void finish(CommandResult& r, const RunOptions& o, Clock::time_point start) {
  if (o.timing) {
    r.report["timing"] = Json{{"seconds", std::chrono::duration<double>(Clock::now() - start).count()}};
  }
}

Json facets_json(const PseudoCone& pc) {
  const FacetComplex fc = facet_complex(pc);
  Json a = Json::array();
  for (const Facet& f : fc.facets) a.push_back(vec_list_json(f.vertices));
  return a;
}

Json body_json(const PseudoCone& pc) {
  return Json{{"directions", vec_list_json(pc.directions())},
              {"support_numbers", doubles_json(pc.support_numbers())},
              {"facets", facets_json(pc)}};
}

Json check(const std::string& name, bool passed) { return Json{{"name", name}, {"passed", passed}}; }

// Body for the suites: the given body tightened, or a solution of the measure.
PseudoCone suite_body(const Problem& p, const WeightFunction& w) {
  if (p.body) return tighten(p.pseudo_cone());
  if (!p.measure.empty()) {
    const SolveReport rep = solve_minkowski(p.cone, w, p.directional_measure(), p.solver);
    if (!rep.converged) throw Error(Errc::NotConverged, "the measure could not be solved for a test body");
    return rep.solution;
  }
  throw Error(Errc::InvalidInput, "the suite needs a body or a measure");
}

void suite_mc(const Problem& p, const RunOptions& o, Json& checks) {
  const WeightFunction w = p.weight_function();
  w.require_solver_range();
  const PseudoCone pc = suite_body(p, w);
  const QuadratureConfig& cfg = p.solver.quadrature;
  const SurfaceMeasure s = surface_measure(pc, w, cfg);
  const auto mc = mc_surface_measure(pc, w, o.samples, p.solver.seed);
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const double dev = std::abs(mc[i].estimate - s.masses[i]);
    const bool ok = mc[i].hits == 0 ? s.masses[i] == 0.0 && mc[i].estimate == 0.0 : dev <= 3.0 * mc[i].std_error;
    Json c = check("surface_measure[" + std::to_string(i) + "]", ok);
    c["quadrature"] = s.masses[i];
    c["estimate"] = mc[i].estimate;
    c["std_error"] = mc[i].std_error;
    c["hits"] = mc[i].hits;
    checks.push_back(std::move(c));
  }
  const double ve = covolume_euler(pc, w, s).value;
  const double vr = covolume_radial(pc, w, cfg).value;
  Json routes = check("covolume_routes", rel_diff(ve, vr) <= identity_tol(pc.dim()));
  routes["euler"] = ve;
  routes["radial"] = vr;
  checks.push_back(std::move(routes));

  const double T = truncation_height(pc, w, 1e-6 * vr);
  const McCovolume mv = mc_covolume(pc, w, o.samples, p.solver.seed, T);
  Json c = check("covolume_mc", std::abs(mv.mc.estimate - vr) <= 3.0 * mv.mc.std_error + mv.tail_bound);
  c["radial"] = vr;
  c["estimate"] = mv.mc.estimate;
  c["std_error"] = mv.mc.std_error;
  c["truncation"] = mv.truncation;
  c["tail_bound"] = mv.tail_bound;
  checks.push_back(std::move(c));
}

void suite_gradient(const Problem& p, const RunOptions& o, Json& checks) {
  const WeightFunction w = p.weight_function();
  w.require_solver_range();
  const PseudoCone pc = suite_body(p, w);
  const QuadratureConfig& cfg = p.solver.quadrature;
  const SurfaceMeasure s = surface_measure(pc, w, cfg);
  const double smax = *std::max_element(s.masses.begin(), s.masses.end());
  const double step = 1e-5;

  double worst = 0.0;
  Json rows = Json::array();
  for (std::size_t i = 0; i < pc.size(); ++i) {
    std::vector<double> hp = pc.support_numbers(), hm = hp;
    hp[i] += step;
    hm[i] -= step;
    const double fd = (covolume_radial(pc.with_support(hp), w, cfg).value -
                       covolume_radial(pc.with_support(hm), w, cfg).value) / (2.0 * step);
    const double err = std::abs(fd - s.masses[i]) / std::max(s.masses[i], 1e-6 * smax);
    worst = std::max(worst, err);
    rows.push_back(Json{{"finite_difference", fd}, {"surface", s.masses[i]}, {"relative_error", err}});
  }
  Json g = check("gradient_identity", worst <= 1e-4);
  g["step"] = step;
  g["max_relative_error"] = worst;
  g["rows"] = std::move(rows);
  checks.push_back(std::move(g));

  const double ve = covolume_euler(pc, w, s).value;
  const double vr = covolume_radial(pc, w, cfg).value;
  Json e = check("euler_identity", rel_diff(ve, vr) <= identity_tol(pc.dim()));
  e["euler"] = ve;
  e["radial"] = vr;
  e["relative_difference"] = rel_diff(ve, vr);
  checks.push_back(std::move(e));

  std::mt19937_64 rng(p.solver.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> f(pc.size());
  for (double& x : f) {
    do {
      x = unit(rng);
    } while (std::abs(x) < 0.1);
  }
  const RadialDerivativeReport rd = radial_derivative_check(LogFamily{pc, f}, 100, p.solver.seed);
  Json r = check("radial_derivative", rd.passed);
  r["samples"] = rd.samples;
  r["ridge_resamples"] = rd.ridge_resamples;
  r["max_relative_error_log"] = rd.max_rel_error_log;
  r["max_relative_error_linear"] = rd.max_rel_error_linear;
  r["lipschitz_max"] = rd.lipschitz_max;
  r["order"] = rd.order;
  checks.push_back(std::move(r));
  (void)o;
}

void suite_continuity(const Problem& p, Json& checks) {
  const WeightFunction w = p.weight_function();
  w.require_finite_measure_range();
  const PseudoCone pc = suite_body(p, w);
  for (ContinuityKind k : {ContinuityKind::Wulff, ContinuityKind::Restriction, ContinuityKind::Measure}) {
    const ContinuityReport rep = continuity_suite(k, pc, w, p.solver.seed, p.solver.quadrature);
    Json c = check(std::string("continuity_") + to_string(k), rep.passed);
    c["monotone"] = rep.monotone;
    c["eps"] = doubles_json(rep.eps);
    c["discrepancy"] = doubles_json(rep.discrepancy);
    checks.push_back(std::move(c));
  }
}

void suite_lemma71(const Problem& p, const RunOptions& o, Json& checks) {
  const WeightFunction w = p.weight_function();
  w.require_solver_range();
  SolverOptions opts = p.solver;
  if (o.tolerance) opts.tolerance = *o.tolerance;
  const SolveReport rep = solve_minkowski(p.cone, w, p.directional_measure(), opts);
  Json c = check("lemma71_bound", rep.converged && rep.lemma71_violations == 0 && rep.lemma71_max_ratio <= 1.0);
  c["converged"] = rep.converged;
  c["bound"] = rep.lemma71_bound;
  c["max_ratio"] = rep.lemma71_max_ratio;
  c["violations"] = rep.lemma71_violations;
  c["iterations"] = rep.iterations;
  checks.push_back(std::move(c));
}

void suite_lemma72(const Problem& p, Json& checks) {
  if (!p.lemma72) throw Error(Errc::InvalidInput, "the lemma72 suite needs a verify section with omega and beta");
  const Lemma72Report rep = lemma72_check(p.pseudo_cone(), p.lemma72->omega, p.lemma72->beta);
  Json c = check("lemma72_facets", rep.passed);
  c["compared_facets"] = rep.compared_facets;
  c["max_vertex_difference"] = rep.max_vertex_difference;
  checks.push_back(std::move(c));
}

}  // namespace

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::NotConverged:
      return kExitNotConverged;
    case Errc::ToleranceNotMet:
    case Errc::BoundViolation:
    case Errc::RootBracketFailure:
    case Errc::RidgeSample:
      return kExitVerification;
    case Errc::SegmentThroughOrigin:
    case Errc::DegeneratePolygon:
    case Errc::EmptyTruncation:
    case Errc::OriginArgument:
      return kExitInternal;
    default:
      return kExitInvalidInput;
  }
}

CommandResult cmd_solve(const Problem& p0, const RunOptions& o) {
  const auto start = Clock::now();
  Problem p = with_overrides(p0, o);
  if (o.tolerance) p.solver.tolerance = *o.tolerance;
  p.solver.validate();
  const WeightFunction w = p.weight_function();
  w.require_solver_range();
  const DirectionalMeasure phi = p.directional_measure();
  const SolveReport rep = solve_minkowski(p.cone, w, phi, p.solver);

  CommandResult r;
  r.report = header("solve", p);
  Json res;
  res["converged"] = rep.converged;
  res["iterations"] = rep.iterations;
  res["restarts"] = rep.restarts;
  res["lambda"] = rep.lambda;
  res["solution"] = body_json(rep.solution);
  Json table = Json::array();
  for (std::size_t i = 0; i < phi.size(); ++i) {
    table.push_back(Json{{"direction", vec_json(phi.atoms()[i].direction)},
                         {"target", phi.atoms()[i].mass},
                         {"achieved", rep.surface[i]},
                         {"residual", rep.residuals[i]}});
  }
  res["residuals"] = std::move(table);
  res["max_residual"] = rep.max_residual;
  res["b_of_K"] = rep.b_of_K;
  res["covolume"] = Json{{"euler", rep.covolume},
                         {"radial", covolume_radial(rep.solution, w, p.solver.quadrature).value}};
  res["normalized_covolume"] = rep.normalized_radial;
  res["lemma71"] = Json{{"bound", rep.lemma71_bound},
                        {"max_ratio", rep.lemma71_max_ratio},
                        {"violations", rep.lemma71_violations}};
  res["phi_trace"] = doubles_json(rep.phi_trace);
  r.report["result"] = std::move(res);
  if (!rep.converged) {
    r.exit_code = kExitNotConverged;
    std::ostringstream os;
    os << "NotConverged: max residual " << rep.max_residual << " exceeds tolerance " << p.solver.tolerance;
    r.diagnostic = os.str();
  }
  finish(r, o, start);
  return r;
}

CommandResult cmd_evaluate(const Problem& p0, const RunOptions& o) {
  const auto start = Clock::now();
  Problem p = with_overrides(p0, o);
  if (o.tolerance) p.solver.quadrature.tolerance = *o.tolerance;
  p.solver.quadrature.validate();
  const QuadratureConfig& cfg = p.solver.quadrature;
  const WeightFunction w = p.weight_function();
  w.require_solver_range();
  const PseudoCone given = p.pseudo_cone();
  const PseudoCone tight = tighten(given);

  bool is_tight = true;
  for (std::size_t i = 0; i < given.size(); ++i) {
    const double a = given.support_numbers()[i], b = tight.support_numbers()[i];
    is_tight = is_tight && std::abs(a - b) <= 1e-12 * std::max(a, b);
  }
  const PseudoCone body(given.cone_ptr(), given.directions(),
                        o.tighten ? tight.support_numbers() : given.support_numbers(), o.tighten || is_tight);

  CommandResult r;
  r.report = header("evaluate", p);
  Json res;
  res["tightened"] = body.tightened();
  res["body"] = body_json(body);
  res["tightened_support_numbers"] = doubles_json(tight.support_numbers());
  const SurfaceMeasure s = surface_measure(body, w, cfg);
  res["surface"] = Json{{"masses", doubles_json(s.masses)}, {"total", s.total}};
  const CovolumeResult vr = covolume_radial(body, w, cfg);
  Json cov;
  if (body.tightened()) {
    const CovolumeResult ve = covolume_euler(body, w, s);
    cov["euler"] = ve.value;
    cov["radial"] = vr.value;
    cov["relative_difference"] = rel_diff(ve.value, vr.value);
  } else {
    cov["euler"] = nullptr;
    cov["euler_refused"] = "the body is not tight: the Euler covolume needs tightened support numbers (use --tighten)";
    cov["radial"] = vr.value;
    r.diagnostic = "warning: " + cov["euler_refused"].get<std::string>();
  }
  res["covolume"] = std::move(cov);
  r.report["result"] = std::move(res);
  finish(r, o, start);
  return r;
}

CommandResult cmd_verify(const Problem& p0, const RunOptions& o) {
  const auto start = Clock::now();
  const Problem p = with_overrides(p0, o);
  Json checks = Json::array();
  if (o.suite == "mc") {
    suite_mc(p, o, checks);
  } else if (o.suite == "gradient") {
    suite_gradient(p, o, checks);
  } else if (o.suite == "continuity") {
    suite_continuity(p, checks);
  } else if (o.suite == "lemma71") {
    suite_lemma71(p, o, checks);
  } else if (o.suite == "lemma72") {
    suite_lemma72(p, checks);
  } else {
    throw Error(Errc::InvalidInput, "unknown suite '" + o.suite + "' (expected mc, gradient, continuity, lemma71 or lemma72)");
  }
  bool all = true;
  std::string failed;
  for (const Json& c : checks) {
    if (!c.at("passed").get<bool>()) {
      all = false;
      failed += (failed.empty() ? "" : ", ") + c.at("name").get<std::string>();
    }
  }
  CommandResult r;
  r.report = header("verify", p);
  r.report["suite"] = o.suite;
  if (o.suite == "mc") r.report["samples"] = o.samples;
  r.report["passed"] = all;
  r.report["checks"] = std::move(checks);
  if (!all) {
    r.exit_code = kExitVerification;
    r.diagnostic = "verification failed: " + failed;
  }
  finish(r, o, start);
  return r;
}

CommandResult cmd_demo_nonuniqueness(const Problem& p0, const RunOptions& o) {
  const auto start = Clock::now();
  Problem p = with_overrides(p0, o);
  if (o.tolerance) p.solver.quadrature.tolerance = *o.tolerance;
  p.solver.quadrature.validate();
  const WeightFunction w = p.weight_function();
  const NonuniquenessPair pair = nonuniqueness_pair(p.cone, w, p.solver.quadrature);

  CommandResult r;
  Problem echo;
  echo.cone = p.cone;
  echo.weight = p.weight;
  echo.solver = p.solver;
  r.report = header("demo-nonuniqueness", echo);
  Json res;
  res["t0"] = pair.t0;
  res["t1"] = pair.t1;
  res["theta_one"] = pair.theta_one;
  res["shrink"] = pair.shrink;
  res["K"] = Json{{"support_numbers", doubles_json(pair.K.support_numbers())},
                  {"directions", vec_list_json(pair.K.directions())},
                  {"facet", facets_json(pair.K)[0]},
                  {"mass", pair.mass_K}};
  Json halfspaces = Json::array();
  for (const Halfspace& h : pair.L.halfspaces) halfspaces.push_back(Json{{"a", vec_json(h.a)}, {"b", h.b}});
  res["L"] = Json{{"halfspaces", std::move(halfspaces)}, {"facet", vec_list_json(pair.facet_L)}, {"mass", pair.mass_L}};
  res["mass_difference"] = std::abs(pair.mass_K - pair.mass_L);
  res["hausdorff"] = pair.hausdorff;
  res["truncation"] = 2.0 * pair.t0;
  res["passed"] = pair.passed;
  r.report["result"] = std::move(res);
  if (p.cone->dim() == 2) {
    const double t = 2.0 * pair.t0;
    r.svg = svg_overlay(*p.cone, {truncate(pair.K, t), truncate(pair.L, *p.cone, t)}, t);
  }
  if (!pair.passed) {
    r.exit_code = kExitVerification;
    r.diagnostic = "verification failed: the two bodies do not carry equal unit masses or coincide";
  }
  finish(r, o, start);
  return r;
}

Problem demo_problem(const std::string& cone, const std::string& kind, double q) {
  Problem p;
  if (cone == "Q2") {
    p.cone = share(quadrant_cone());
  } else if (cone == "O3") {
    p.cone = share(square_pyramid_cone());
  } else {
    throw Error(Errc::InvalidInput, "unknown cone preset '" + cone + "' (expected Q2 or O3)");
  }
  p.weight = WeightSpec{weight_kind_from_string(kind), q};
  p.solver = SolverOptions::defaults_for(p.cone->dim());
  return p;
}

}  // namespace pcmk
