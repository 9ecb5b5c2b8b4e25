#pragma once

#include "pcmk/verify.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pcmk {

using Json = nlohmann::ordered_json;

struct WeightSpec {
  WeightKind kind = WeightKind::HeightPower;
  double q = 0.0;
};

struct BodySpec {
  std::vector<Vec> directions;
  std::vector<double> support;
};

struct Lemma72Spec {
  std::vector<int> omega;
  std::vector<int> beta;
};

/// Parsed problem file. Optional sections stay empty when absent.
struct Problem {
  ConePtr cone;
  std::optional<WeightSpec> weight;
  std::vector<Atom> measure;
  std::optional<BodySpec> body;
  SolverOptions solver;
  std::optional<Lemma72Spec> lemma72;

  WeightFunction weight_function() const;  // throws InvalidInput if absent
  DirectionalMeasure directional_measure() const;
  PseudoCone pseudo_cone(bool tightened = false) const;

  /// Canonical form written into reports; parses back to the same problem.
  Json to_json() const;
};

/// Throws Error(InvalidInput) with "line L, column C" for syntax errors and
/// the JSON path of the offending field otherwise. A report file is accepted
/// too; its "problem" member is used.
Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& path);

/// JSON text with every double printed by "%.17g", two-space indentation.
std::string dump_json(const Json& j);

Json vec_json(const Vec& v);
Json vec_list_json(const std::vector<Vec>& vs);
Json doubles_json(const std::vector<double>& xs);

/// Static SVG overlay of the boundaries of two-dimensional bodies inside
/// C^-(t); each body becomes one <polyline>.
std::string svg_overlay(const Cone& cone, const std::vector<TruncatedBody>& bodies, double t);

/// Boundary chain of a planar truncated body from the first cone ray to the
/// second, without the cap at height t.
std::vector<Vec> boundary_chain(const Cone& cone, const TruncatedBody& body);

}  // namespace pcmk
