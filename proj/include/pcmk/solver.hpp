#pragma once

#include "pcmk/measures.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace pcmk {

struct Atom {
  Vec direction;
  double mass = 0.0;
};

/// Finitely supported measure on Ω_{C°}.
class DirectionalMeasure {
 public:
  /// Normalizes directions. Throws InvalidMeasure (empty, non-positive or
  /// non-finite mass), OutsideDualInterior or DuplicateDirection.
  DirectionalMeasure(const Cone& cone, std::vector<Atom> atoms);

  std::size_t size() const { return atoms_.size(); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::vector<Vec> directions() const;
  std::vector<double> masses() const;
  double total_mass() const;
  // min_i δ_C(u_i)
  double margin() const { return margin_; }

  DirectionalMeasure scaled(double t) const;

 private:
  DirectionalMeasure() = default;
  std::vector<Atom> atoms_;
  double margin_ = 0.0;
};

struct SolverOptions {
  double tolerance = 1e-8;
  int max_iterations = 2000;
  double armijo_slope = 1e-4;
  double backtrack = 0.5;
  double restart_jitter = 0.05;
  int max_restarts = 5;
  std::uint64_t seed = 0;
  QuadratureConfig quadrature;

  /// Residual tolerance 1e-8 (n = 2) or 1e-6 (n = 3).
  static SolverOptions defaults_for(int dim);
  void validate() const;
};

struct SolveReport {
  PseudoCone solution;
  double lambda = 0.0;
  std::vector<double> phi_trace;
  std::vector<double> residuals;  // |S_i - φ_i| / φ_i at the returned body
  double max_residual = 0.0;
  std::vector<double> surface;    // S^Θ of the returned body
  double b_of_K = 0.0;
  double covolume = 0.0;          // V_Θ of the returned body
  double normalized_radial = 0.0; // radial-route V_Θ of the normalized optimum (should be 1)
  int iterations = 0;
  int restarts = 0;
  bool converged = false;
  double lemma71_bound = 0.0;
  double lemma71_max_ratio = 0.0;  // max over normalized iterates of max_i h̄_i / bound
  int lemma71_violations = 0;
};

/// Φ(h) = V_Θ([h])^{-1/(n-q)} Σ h_i φ_i.
double phi_functional(const std::vector<double>& h, const DirectionalMeasure& phi, const WeightFunction& w,
                      const QuadratureConfig& cfg);

/// Maximizes Φ and rescales the maximizer so its surface measure is φ.
/// The report is returned even when the iteration does not converge.
/// Throws InvalidExponent or UnsupportedDimension.
SolveReport solve_minkowski(const ConePtr& cone, const WeightFunction& w, const DirectionalMeasure& phi,
                            const SolverOptions& opts);

/// (H^n_Θ(C ∩ B^n))^{-1/(n-q)}.
double lemma71_bound(const WeightFunction& w, const QuadratureConfig& cfg);

/// Throws BoundViolation if V_Θ(pc) = 1 (within 1e-6) and some h̄_i exceeds
/// the bound. Returns max_i h̄_i / bound.
double check_lemma71(const PseudoCone& pc, const WeightFunction& w, double bound, const QuadratureConfig& cfg);

}  // namespace pcmk
