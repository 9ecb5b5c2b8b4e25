#include "pcmk/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pcmk {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::NotPointed: return "NotPointed";
    case Errc::NotFullDimensional: return "NotFullDimensional";
    case Errc::BadVFrak: return "BadVFrak";
    case Errc::OutsideDomain: return "OutsideDomain";
    case Errc::OutsideDualInterior: return "OutsideDualInterior";
    case Errc::DuplicateDirection: return "DuplicateDirection";
    case Errc::NonPositiveSupport: return "NonPositiveSupport";
    case Errc::UnsupportedDimension: return "UnsupportedDimension";
    case Errc::EmptySubset: return "EmptySubset";
    case Errc::EmptyTruncation: return "EmptyTruncation";
    case Errc::OutsideCone: return "OutsideCone";
    case Errc::OriginArgument: return "OriginArgument";
    case Errc::SegmentThroughOrigin: return "SegmentThroughOrigin";
    case Errc::DegeneratePolygon: return "DegeneratePolygon";
    case Errc::ToleranceNotMet: return "ToleranceNotMet";
    case Errc::InvalidExponent: return "InvalidExponent";
    case Errc::NotTightened: return "NotTightened";
    case Errc::InvalidMeasure: return "InvalidMeasure";
    case Errc::NotConverged: return "NotConverged";
    case Errc::RidgeSample: return "RidgeSample";
    case Errc::RootBracketFailure: return "RootBracketFailure";
    case Errc::MarginViolation: return "MarginViolation";
    case Errc::BoundViolation: return "BoundViolation";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

double pairwise_sum(const double* values, std::size_t count) {
  if (count == 0) return 0.0;
  if (count <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += values[i];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, count - half);
}

Vec unit_vector(const Vec& v) {
  const double n2 = v.squaredNorm();
  if (std::abs(n2 - 1.0) <= 8.0 * std::numeric_limits<double>::epsilon()) return v;
  return v / std::sqrt(n2);
}

double angle_between(const Vec& a, const Vec& b) {
  // Half-angle form stays accurate for nearly parallel vectors.
  const Vec an = a.normalized();
  const Vec bn = b.normalized();
  return 2.0 * std::atan2((an - bn).norm(), (an + bn).norm());
}

}  // namespace pcmk
