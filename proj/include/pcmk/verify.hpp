#pragma once

#include "pcmk/solver.hpp"

#include <cstdint>
#include <vector>

namespace pcmk {

// ---------------------------------------------------------------- sampling

/// Counter-based uniform deviate in (0,1) for (seed, index, stream).
double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t stream);
/// Uniform point on S^{n-1} for sample `index`, n in {2,3}.
Vec sphere_sample(int dim, std::uint64_t seed, std::uint64_t index);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t hits = 0;  // samples with a nonzero contribution
};

/// Per-direction Monte Carlo estimate of S^Θ from the radial Gauss map.
std::vector<McEstimate> mc_surface_measure(const PseudoCone& pc, const WeightFunction& w, std::uint64_t samples,
                                           std::uint64_t seed);

/// Upper bound for the Θ-measure of (C \ K) above height T.
double covolume_tail_bound(const PseudoCone& pc, const WeightFunction& w, double T);
/// Smallest T (up to a factor 2) whose tail bound is at most `abs_error`.
double truncation_height(const PseudoCone& pc, const WeightFunction& w, double abs_error);

struct McCovolume {
  McEstimate mc;
  double truncation = 0.0;
  double tail_bound = 0.0;
};

/// Monte Carlo covolume of (C \ K) ∩ C^-(T).
McCovolume mc_covolume(const PseudoCone& pc, const WeightFunction& w, std::uint64_t samples, std::uint64_t seed,
                       double T);

// ------------------------------------------------------ radial derivatives

/// h_t = h0 · exp(t f).
struct LogFamily {
  PseudoCone base;
  std::vector<double> f;
  PseudoCone at(double t) const;
};

struct RadialDerivativeReport {
  int samples = 0;             // non-ridge directions used
  int ridge_resamples = 0;     // rejected draws near the ridge set
  double max_rel_error_log = 0.0;     // d log ρ / dt vs f(α)
  double max_rel_error_linear = 0.0;  // dρ/dt vs f(α) ρ / h̄(α)
  double lipschitz_max = 0.0;  // max |ρ_t - ρ_0| / |t|
  double order = 0.0;          // observed order of the central difference of ρ
  bool passed = false;
};

/// Finite-difference check of both radial derivative formulas at `count`
/// directions drawn uniformly from Ω_C.
RadialDerivativeReport radial_derivative_check(const LogFamily& family, int count, std::uint64_t seed,
                                               double step = 1e-4, double tolerance = 1e-5);

// ---------------------------------------------------------- non-uniqueness

struct NonuniquenessPair {
  PseudoCone K;              // C(t0) + C
  HPolyhedron L;             // F + C
  double t0 = 0.0;
  double t1 = 0.0;
  double shrink = 0.0;       // homothety factor of F about the centroid of C(t1)
  double theta_one = 0.0;    // ϑ(1)
  double mass_K = 0.0;       // S^Θ(K, {-v})
  double mass_L = 0.0;       // S^Θ(L, {-v})
  std::vector<Vec> facet_L;  // vertices of F
  double hausdorff = 0.0;    // d_H of the truncations at height 2 t0
  bool passed = false;
};

/// Two different pseudo-cones whose surface measures are the unit point mass at -v.
/// Throws RootBracketFailure or InvalidExponent.
NonuniquenessPair nonuniqueness_pair(const ConePtr& cone, const WeightFunction& w, const QuadratureConfig& cfg);

// ----------------------------------------------------------- facet locality

struct Lemma72Report {
  bool passed = false;
  double max_vertex_difference = 0.0;
  int compared_facets = 0;
};

/// Compares the facets of tighten(pc) and restrict_to(pc, beta) in the
/// directions of `omega`. Every omega direction must lie in beta, keep an
/// angular margin of `margin` from ∂Ω_{C°} and from the directions outside
/// beta, and have all of its facet neighbours in beta; otherwise
/// MarginViolation is thrown.
Lemma72Report lemma72_check(const PseudoCone& pc, const std::vector<int>& omega, const std::vector<int>& beta,
                            double margin = 1e-3);

// --------------------------------------------------------------- continuity

struct ContinuityReport {
  std::vector<double> eps;
  std::vector<double> discrepancy;
  bool monotone = false;
  bool passed = false;  // monotone and the last discrepancy below the threshold
};

enum class ContinuityKind { Wulff, Restriction, Measure };
const char* to_string(ContinuityKind kind);

/// Perturbs h by ε·p (p seeded, |p_i| <= h_i) for ε = 0.1, 0.05, ... and
/// tracks d_H of truncations (Wulff), d_H of the restrictions to the first
/// half of the directions (Restriction) or max_i |ΔS_i| (Measure) until the
/// discrepancy is below `threshold`.
ContinuityReport continuity_suite(ContinuityKind kind, const PseudoCone& pc, const WeightFunction& w,
                                  std::uint64_t seed, const QuadratureConfig& cfg, double threshold = 1e-6,
                                  int max_levels = 40);

// ----------------------------------------------------------------- fixtures

/// Random tightened pseudo-cone with at most `max_directions` directions,
/// each with δ_C >= min_delta and a facet of non-negligible size.
PseudoCone random_tight_fixture(const ConePtr& cone, int max_directions, std::uint64_t seed,
                                double min_delta = 0.1);

}  // namespace pcmk
