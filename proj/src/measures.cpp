#include "pcmk/measures.hpp"

#include <cmath>

namespace pcmk {
namespace {

void require_dim(const PseudoCone& pc) {
  if (pc.dim() != 2 && pc.dim() != 3) {
    throw Error(Errc::UnsupportedDimension, "facet measures are computed for n = 2, 3");
  }
}

}  // namespace

const char* to_string(CovolumeMethod m) { return m == CovolumeMethod::Euler ? "euler" : "radial"; }

SurfaceMeasure surface_measure(const PseudoCone& pc, const WeightFunction& w, const QuadratureConfig& cfg) {
  w.require_finite_measure_range();
  require_dim(pc);
  const FacetComplex fc = facet_complex(pc);
  SurfaceMeasure s;
  s.masses.assign(pc.size(), 0.0);
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const Facet& f = fc.facets[i];
    if (f.empty()) continue;
    s.masses[i] = pc.dim() == 2 ? segment_integral(w, f.vertices[0], f.vertices[1], cfg)
                                : polygon_integral(w, f.vertices, cfg);
  }
  s.total = pairwise_sum(s.masses);
  return s;
}

CovolumeResult covolume_euler(const PseudoCone& pc, const WeightFunction& w, const SurfaceMeasure& s) {
  w.require_solver_range();
  if (!pc.tightened()) {
    throw Error(Errc::NotTightened, "the Euler covolume needs tightened support numbers (use --tighten)");
  }
  std::vector<double> terms(pc.size());
  for (std::size_t i = 0; i < pc.size(); ++i) terms[i] = pc.support_numbers()[i] * s.masses[i];
  CovolumeResult r;
  r.method = CovolumeMethod::Euler;
  r.value = pairwise_sum(terms) / (w.dim() - w.q());
  r.error = r.value * QuadratureConfig::for_dim(w.dim()).tolerance;
  return r;
}

CovolumeResult covolume_euler(const PseudoCone& pc, const WeightFunction& w, const QuadratureConfig& cfg) {
  w.require_solver_range();
  if (!pc.tightened()) {
    throw Error(Errc::NotTightened, "the Euler covolume needs tightened support numbers (use --tighten)");
  }
  CovolumeResult r = covolume_euler(pc, w, surface_measure(pc, w, cfg));
  r.error = r.value * cfg.tolerance;
  return r;
}

CovolumeResult covolume_radial(const PseudoCone& pc, const WeightFunction& w, const QuadratureConfig& cfg) {
  w.require_solver_range();
  require_dim(pc);
  LinearMinPartition part;
  for (std::size_t i = 0; i < pc.size(); ++i) {
    part.forms.push_back(-pc.directions()[i] / pc.support_numbers()[i]);
  }
  const double e = w.dim() - w.q();
  auto f = [&](const Vec& v) {
    double m = v.dot(part.forms[0]);
    for (std::size_t i = 1; i < part.forms.size(); ++i) m = std::min(m, v.dot(part.forms[i]));
    return std::pow(m, -e) * w(v);
  };
  CovolumeResult r;
  r.method = CovolumeMethod::Radial;
  r.value = sphere_quadrature(pc.cone(), f, cfg, &part) / e;
  r.error = r.value * cfg.tolerance;
  return r;
}

std::vector<double> covolume_gradient(const PseudoCone& pc, const WeightFunction& w, const QuadratureConfig& cfg) {
  return surface_measure(pc, w, cfg).masses;
}

Mat covolume_hessian(const PseudoCone& pc, const WeightFunction& w, const SurfaceMeasure& s,
                     const QuadratureConfig& cfg) {
  const std::size_t m = pc.size();
  const FacetComplex fc = facet_complex(pc);
  Mat J = Mat::Zero(m, m);
  const int base = static_cast<int>(fc.cone_facets);
  for (const Ridge& r : fc.ridges) {
    if (r.first < base || r.second < base) continue;
    const int i = r.first - base;
    const int j = r.second - base;
    if (fc.facets[i].empty() || fc.facets[j].empty()) continue;
    const double sine = std::sin(angle_between(pc.directions()[i], pc.directions()[j]));
    double mass = 0.0;
    if (pc.dim() == 2) {
      mass = w(fc.vertices[r.vertex_ids[0]]);
    } else {
      mass = segment_integral(w, fc.vertices[r.vertex_ids[0]], fc.vertices[r.vertex_ids[1]], cfg);
    }
    J(i, j) = J(j, i) = -mass / sine;
  }
  const double deg = w.dim() - 1.0 - w.q();
  const auto& h = pc.support_numbers();
  for (std::size_t i = 0; i < m; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) off += h[j] * J(i, j);
    }
    J(i, i) = (deg * s.masses[i] - off) / h[i];
  }
  return J;
}

}  // namespace pcmk
