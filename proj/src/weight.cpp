#include "pcmk/weight.hpp"

#include <cmath>
#include <sstream>

namespace pcmk {

const char* to_string(WeightKind kind) {
  return kind == WeightKind::RadialPower ? "radial-power" : "height-power";
}

WeightKind weight_kind_from_string(const std::string& s) {
  if (s == "radial-power") return WeightKind::RadialPower;
  if (s == "height-power") return WeightKind::HeightPower;
  throw Error(Errc::InvalidInput, "unknown weight kind '" + s + "' (expected radial-power or height-power)");
}

WeightFunction::WeightFunction(WeightKind kind, double q, ConePtr cone)
    : kind_(kind), q_(q), cone_(std::move(cone)) {
  if (!cone_) throw Error(Errc::InvalidInput, "weight function needs a cone");
  if (!std::isfinite(q_)) throw Error(Errc::InvalidExponent, "q must be finite");
}

bool WeightFunction::solver_valid() const {
  const double n = dim();
  return q_ > n - 1.0 && q_ < n;
}

void WeightFunction::require_solver_range() const {
  if (!solver_valid()) {
    std::ostringstream os;
    os << "q must lie in (n-1,n); got q=" << q_ << " for n=" << dim();
    throw Error(Errc::InvalidExponent, os.str());
  }
}

void WeightFunction::require_finite_measure_range() const {
  if (!(q_ > dim() - 1.0)) {
    std::ostringstream os;
    os << "q must exceed n-1 for a finite weighted surface area measure; got q=" << q_ << " for n=" << dim();
    throw Error(Errc::InvalidExponent, os.str());
  }
}

double WeightFunction::operator()(const Vec& y) const {
  const double base = kind_ == WeightKind::RadialPower ? y.norm() : y.dot(cone_->v_frak());
  return std::pow(base, -q_);
}

double theta_eval(const WeightFunction& w, const Vec& y) {
  if (y.size() != w.dim()) throw Error(Errc::InvalidInput, "argument has wrong dimension");
  if (y.norm() == 0.0) throw Error(Errc::OriginArgument, "Θ is not defined at the origin");
  if (!w.cone().contains(y, 1e-12)) throw Error(Errc::OutsideCone, "Θ is defined on C only");
  return w(y);
}

}  // namespace pcmk
