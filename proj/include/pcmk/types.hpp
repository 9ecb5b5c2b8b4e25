#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace pcmk {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Failure categories surfaced by the library. The CLI maps them onto exit codes.
enum class Errc {
  NotPointed,
  NotFullDimensional,
  BadVFrak,
  OutsideDomain,
  OutsideDualInterior,
  DuplicateDirection,
  NonPositiveSupport,
  UnsupportedDimension,
  EmptySubset,
  EmptyTruncation,
  OutsideCone,
  OriginArgument,
  SegmentThroughOrigin,
  DegeneratePolygon,
  ToleranceNotMet,
  InvalidExponent,
  NotTightened,
  InvalidMeasure,
  NotConverged,
  RidgeSample,
  RootBracketFailure,
  MarginViolation,
  BoundViolation,
  InvalidInput,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Geometric tolerances shared by the polyhedral routines.
inline constexpr double kUnitTol = 1e-12;       // unit-length check on stored directions
inline constexpr double kInteriorMargin = 1e-12;
inline constexpr double kFacetTol = 1e-9;       // vertex dedup and incidence
inline constexpr double kDistinctAngle = 1e-9;  // minimal angular separation of directions

// Sum of a sequence by recursive halving; result independent of how the
// caller partitioned the work that produced the terms.
double pairwise_sum(const double* values, std::size_t count);

inline double pairwise_sum(const std::vector<double>& values) {
  return pairwise_sum(values.data(), values.size());
}

double angle_between(const Vec& a, const Vec& b);

// v/|v|, except that vectors already of unit length (to rounding) are
// returned unchanged, so normalizing twice gives identical bits.
Vec unit_vector(const Vec& v);

}  // namespace pcmk
