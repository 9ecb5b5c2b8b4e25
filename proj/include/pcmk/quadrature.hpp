#pragma once

#include "pcmk/weight.hpp"

#include <functional>
#include <vector>

namespace pcmk {

struct QuadratureConfig {
  double tolerance = 1e-10;  // target relative accuracy
  int max_depth = 40;        // bisection levels (1-D); quadrisection levels are capped at 14
  int gauss_order = 16;      // Gauss-Legendre points per 1-D panel

  /// 1e-10 for n = 2, 1e-8 for n = 3.
  static QuadratureConfig for_dim(int dim);
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // sum of accepted local error estimates
};

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre rule of the given order (cached).
const GaussRule& gauss_legendre(int order);

/// Adaptive bisection with a fixed Gauss-Legendre panel rule. Throws
/// ToleranceNotMet when the depth budget is exhausted.
QuadResult adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                          const QuadratureConfig& cfg);

struct TriangleNode {
  double l0, l1, l2, weight;  // barycentric coordinates, weights sum to 1
};

/// Symmetric 16-point rule, exact for polynomials of degree 8.
const std::vector<TriangleNode>& triangle_rule_degree8();

/// ∫_T g dA over the flat triangle (a,b,c) with adaptive quadrisection.
QuadResult adaptive_triangle(const std::function<double(const Vec&)>& g, const Vec& a, const Vec& b,
                             const Vec& c, const QuadratureConfig& cfg);

/// ∫_{[a,b]} Θ dH^1. Throws SegmentThroughOrigin, OutsideCone, ToleranceNotMet.
double segment_integral(const WeightFunction& w, const Vec& a, const Vec& b, const QuadratureConfig& cfg);

/// ∫_F Θ dH^2 over a planar convex polygon with ordered vertices.
/// Throws DegeneratePolygon, OriginArgument, OutsideCone, ToleranceNotMet.
double polygon_integral(const WeightFunction& w, const std::vector<Vec>& polygon, const QuadratureConfig& cfg);

/// ϑ(t) = ∫_{C(t)} Θ dH^{n-1} for n ∈ {2,3}.
double cross_section_theta(const WeightFunction& w, double t, const QuadratureConfig& cfg);

/// Partition of Ω_C into the cells {v : <v, forms[i]> is minimal}; the
/// integrand is assumed smooth inside each cell.
struct LinearMinPartition {
  std::vector<Vec> forms;
  int cell_of(const Vec& v) const;
};

/// ∫_{Ω_C} f(v) dv for n ∈ {2,3}. With a partition the domain is split
/// exactly along cell boundaries before adaptive integration.
double sphere_quadrature(const Cone& cone, const std::function<double(const Vec&)>& f,
                         const QuadratureConfig& cfg, const LinearMinPartition* partition = nullptr);

/// H^n_Θ(C ∩ B^n) = (1/(n-q)) ∫_{Ω_C} Θ(v) dv. Throws InvalidExponent.
double ball_covolume_density(const WeightFunction& w, const QuadratureConfig& cfg);

}  // namespace pcmk
