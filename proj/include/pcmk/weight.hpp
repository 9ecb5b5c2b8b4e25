#pragma once

#include "pcmk/cone.hpp"

#include <string>

namespace pcmk {

enum class WeightKind {
  RadialPower,  // Θ(y) = |y|^{-q}
  HeightPower,  // Θ(y) = <y, v>^{-q}
};

const char* to_string(WeightKind kind);
WeightKind weight_kind_from_string(const std::string& s);

/// Weight Θ on C \ {o}, positive and homogeneous of degree -q. Any real q is
/// accepted here; routines that need n-1 < q < n check it themselves.
class WeightFunction {
 public:
  WeightFunction(WeightKind kind, double q, ConePtr cone);

  WeightKind kind() const { return kind_; }
  double q() const { return q_; }
  const Cone& cone() const { return *cone_; }
  const ConePtr& cone_ptr() const { return cone_; }
  int dim() const { return cone_->dim(); }

  // n-1 < q < n
  bool solver_valid() const;
  // Throws InvalidExponent unless n-1 < q < n.
  void require_solver_range() const;
  // Throws InvalidExponent unless q > n-1.
  void require_finite_measure_range() const;

  /// Unchecked evaluation for quadrature loops.
  double operator()(const Vec& y) const;

 private:
  WeightKind kind_;
  double q_;
  ConePtr cone_;
};

/// Checked evaluation: throws OriginArgument for y = o and OutsideCone if y ∉ C.
double theta_eval(const WeightFunction& w, const Vec& y);

}  // namespace pcmk
