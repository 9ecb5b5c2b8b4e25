#pragma once

#include "pcmk/pseudo_cone.hpp"
#include "pcmk/quadrature.hpp"

#include <string>
#include <vector>

namespace pcmk {

struct SurfaceMeasure {
  std::vector<double> masses;  // aligned with the pseudo-cone's directions
  double total = 0.0;
};

enum class CovolumeMethod { Euler, Radial };
const char* to_string(CovolumeMethod m);

struct CovolumeResult {
  double value = 0.0;
  CovolumeMethod method = CovolumeMethod::Euler;
  double error = 0.0;
};

/// S_i = ∫_{F_i} Θ dH^{n-1}; empty facets give exactly 0.
/// Throws InvalidExponent (q <= n-1) or UnsupportedDimension.
SurfaceMeasure surface_measure(const PseudoCone& pc, const WeightFunction& w, const QuadratureConfig& cfg);

/// (1/(n-q)) Σ h̄_i S_i. Throws NotTightened or InvalidExponent.
CovolumeResult covolume_euler(const PseudoCone& pc, const WeightFunction& w, const QuadratureConfig& cfg);
/// Same value from an already computed surface measure.
CovolumeResult covolume_euler(const PseudoCone& pc, const WeightFunction& w, const SurfaceMeasure& s);

/// (1/(n-q)) ∫_{Ω_C} ρ_K(v)^{n-q} Θ(v) dv, split exactly along the cells
/// of the radial Gauss map. Throws InvalidExponent.
CovolumeResult covolume_radial(const PseudoCone& pc, const WeightFunction& w, const QuadratureConfig& cfg);

/// ∂V_Θ/∂h_i, which is the surface measure itself.
std::vector<double> covolume_gradient(const PseudoCone& pc, const WeightFunction& w, const QuadratureConfig& cfg);

/// ∂S_i/∂h_j for a tightened body whose ridges each separate two facets.
/// Off-diagonal entries are -∫_{F_i ∩ F_j} Θ / sin∠(u_i,u_j); the diagonal
/// follows from homogeneity of S.
Mat covolume_hessian(const PseudoCone& pc, const WeightFunction& w, const SurfaceMeasure& s,
                     const QuadratureConfig& cfg);

}  // namespace pcmk
