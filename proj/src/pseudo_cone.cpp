#include "pcmk/pseudo_cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace pcmk {

PseudoCone::PseudoCone(ConePtr cone, std::vector<Vec> directions, std::vector<double> support,
                       bool tightened)
    : cone_(std::move(cone)),
      directions_(std::move(directions)),
      support_(std::move(support)),
      tightened_(tightened) {
  if (!cone_) throw Error(Errc::InvalidInput, "pseudo-cone needs a cone");
  if (directions_.empty()) throw Error(Errc::InvalidInput, "pseudo-cone needs at least one direction");
  if (directions_.size() != support_.size()) {
    throw Error(Errc::InvalidInput, "directions and support numbers differ in length");
  }
  const int n = cone_->dim();
  for (std::size_t i = 0; i < directions_.size(); ++i) {
    Vec& u = directions_[i];
    if (u.size() != n || u.norm() == 0.0) throw Error(Errc::InvalidInput, "direction has wrong size or is zero");
    u = unit_vector(u);
    if (!cone_->in_dual_interior(u)) {
      throw Error(Errc::OutsideDualInterior, "direction " + std::to_string(i) + " is not in int Ω_{C°}");
    }
    if (!(support_[i] > 0.0) || !std::isfinite(support_[i])) {
      throw Error(Errc::NonPositiveSupport, "support number " + std::to_string(i) + " must be positive");
    }
  }
  for (std::size_t i = 0; i < directions_.size(); ++i) {
    for (std::size_t j = i + 1; j < directions_.size(); ++j) {
      if (angle_between(directions_[i], directions_[j]) <= kDistinctAngle) {
        throw Error(Errc::DuplicateDirection,
                    "directions " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }
}

HPolyhedron PseudoCone::polyhedron() const {
  HPolyhedron p;
  p.dim = dim();
  for (const Vec& w : cone_->facet_normals()) p.halfspaces.push_back({w, 0.0});
  for (std::size_t i = 0; i < directions_.size(); ++i) p.halfspaces.push_back({directions_[i], -support_[i]});
  return p;
}

PseudoCone PseudoCone::scaled(double t) const {
  std::vector<double> s = support_;
  for (double& v : s) v *= t;
  return PseudoCone(cone_, directions_, std::move(s), tightened_);
}

PseudoCone PseudoCone::with_support(std::vector<double> support) const {
  return PseudoCone(cone_, directions_, std::move(support), false);
}

Vec PseudoCone::interior_point() const {
  const Vec& v = cone_->v_frak();
  return 2.0 * radial_function(*this, v).rho * v;
}

RadialValue radial_function(const PseudoCone& pc, const Vec& v) {
  if (v.size() != pc.dim() || !pc.cone().in_interior(v)) {
    throw Error(Errc::OutsideDomain, "radial function is evaluated on int C only");
  }
  RadialValue out;
  const auto& dirs = pc.directions();
  const auto& h = pc.support_numbers();
  std::vector<double> vals(dirs.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    vals[i] = h[i] / std::abs(v.dot(dirs[i]));
    best = std::max(best, vals[i]);
  }
  out.rho = best;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (vals[i] >= best * (1.0 - 1e-12)) out.argmax.push_back(static_cast<int>(i));
  }
  return out;
}

double support_function(const PseudoCone& pc, const Vec& u) {
  if (u.size() != pc.dim() || !pc.cone().in_dual_interior(u.normalized())) {
    throw Error(Errc::OutsideDualInterior, "support function is evaluated on int Ω_{C°} only");
  }
  const auto verts = enumerate_vertices(pc.polyhedron());
  double best = -std::numeric_limits<double>::infinity();
  for (const PolyVertex& v : verts) best = std::max(best, u.dot(v.point));
  return best;
}

FacetComplex facet_complex(const PseudoCone& pc) {
  const int n = pc.dim();
  if (n != 2 && n != 3) {
    throw Error(Errc::UnsupportedDimension, "facet enumeration supports n = 2 and n = 3");
  }
  const HPolyhedron poly = pc.polyhedron();
  const double tol = poly.tolerance();
  const auto verts = enumerate_vertices(poly);

  FacetComplex fc;
  fc.dim = n;
  fc.cone_facets = pc.cone().facet_normals().size();
  for (const PolyVertex& v : verts) {
    fc.vertices.push_back(v.point);
    fc.vertex_active.push_back(v.active);
  }
  const int m = static_cast<int>(poly.halfspaces.size());
  auto on = [&](int vid, int c) {
    const auto& act = fc.vertex_active[vid];
    return std::binary_search(act.begin(), act.end(), c);
  };

  fc.facets.resize(pc.size());
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const int c = pc.halfspace_index(i);
    const Vec& u = pc.directions()[i];
    std::vector<int> ids;
    for (int vid = 0; vid < static_cast<int>(fc.vertices.size()); ++vid) {
      if (on(vid, c)) ids.push_back(vid);
    }
    Facet& f = fc.facets[i];
    if (n == 2) {
      if (ids.size() < 2) continue;
      Vec t(2);
      t << -u(1), u(0);
      std::sort(ids.begin(), ids.end(), [&](int a, int b) { return fc.vertices[a].dot(t) < fc.vertices[b].dot(t); });
      const int a = ids.front();
      const int b = ids.back();
      if ((fc.vertices[a] - fc.vertices[b]).norm() <= tol) continue;
      f.vertex_ids = {a, b};
    } else {
      if (ids.size() < 3) continue;
      std::vector<Vec> pts;
      for (int vid : ids) pts.push_back(fc.vertices[vid]);
      const auto order = cyclic_order(pts, u);
      std::vector<int> sorted;
      for (int k : order) sorted.push_back(ids[k]);
      double area2 = 0.0;
      const Eigen::Vector3d p0 = fc.vertices[sorted[0]];
      Eigen::Vector3d acc = Eigen::Vector3d::Zero();
      for (std::size_t k = 1; k + 1 < sorted.size(); ++k) {
        const Eigen::Vector3d p1 = fc.vertices[sorted[k]];
        const Eigen::Vector3d p2 = fc.vertices[sorted[k + 1]];
        acc += (p1 - p0).cross(p2 - p0);
      }
      area2 = acc.norm();
      if (area2 <= tol * tol) continue;
      f.vertex_ids = std::move(sorted);
    }
    for (int vid : f.vertex_ids) f.vertices.push_back(fc.vertices[vid]);
  }

  // (n-2)-faces between pairs of constraints, at least one a direction.
  for (int c1 = 0; c1 < m; ++c1) {
    for (int c2 = std::max(c1 + 1, static_cast<int>(fc.cone_facets)); c2 < m; ++c2) {
      std::vector<int> ids;
      for (int vid = 0; vid < static_cast<int>(fc.vertices.size()); ++vid) {
        if (on(vid, c1) && on(vid, c2)) ids.push_back(vid);
      }
      if (ids.empty()) continue;
      Ridge r;
      r.first = c1;
      r.second = c2;
      if (n == 2) {
        r.vertex_ids = {ids.front()};
      } else {
        if (ids.size() < 2) continue;
        const Eigen::Vector3d a1 = poly.halfspaces[c1].a;
        const Eigen::Vector3d a2 = poly.halfspaces[c2].a;
        const Eigen::Vector3d dir = a1.cross(a2);
        std::sort(ids.begin(), ids.end(),
                  [&](int a, int b) { return fc.vertices[a].dot(Vec(dir)) < fc.vertices[b].dot(Vec(dir)); });
        if ((fc.vertices[ids.front()] - fc.vertices[ids.back()]).norm() <= tol) continue;
        r.vertex_ids = {ids.front(), ids.back()};
      }
      fc.ridges.push_back(std::move(r));
    }
  }
  return fc;
}

PseudoCone tighten(const PseudoCone& pc) {
  const auto verts = enumerate_vertices(pc.polyhedron());
  std::vector<double> hbar(pc.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const Vec& u = pc.directions()[i];
    for (const PolyVertex& v : verts) hbar[i] = std::min(hbar[i], -u.dot(v.point));
    // Rounding in the vertex solve must not loosen a constraint.
    hbar[i] = std::max(hbar[i], pc.support_numbers()[i]);
  }
  return PseudoCone(pc.cone_ptr(), pc.directions(), std::move(hbar), true);
}

PseudoCone restrict_to(const PseudoCone& pc, const std::vector<int>& beta) {
  if (beta.empty()) throw Error(Errc::EmptySubset, "restriction needs a nonempty direction subset");
  std::set<int> uniq(beta.begin(), beta.end());
  const PseudoCone t = tighten(pc);
  std::vector<Vec> dirs;
  std::vector<double> h;
  for (int i : uniq) {
    if (i < 0 || i >= static_cast<int>(pc.size())) throw Error(Errc::InvalidInput, "direction index out of range");
    dirs.push_back(t.directions()[i]);
    h.push_back(t.support_numbers()[i]);
  }
  return PseudoCone(pc.cone_ptr(), std::move(dirs), std::move(h), true);
}

TruncatedBody truncate(const HPolyhedron& body, const Cone& cone, double t) {
  TruncatedBody tb;
  tb.height = t;
  tb.polytope = body;
  tb.polytope.halfspaces.push_back({cone.v_frak(), t});
  for (PolyVertex& v : enumerate_vertices(tb.polytope)) tb.vertices.push_back(std::move(v.point));
  if (tb.vertices.empty()) {
    throw Error(Errc::EmptyTruncation, "K ∩ C^-(t) is empty for t = " + std::to_string(t));
  }
  return tb;
}

TruncatedBody truncate(const PseudoCone& pc, double t) { return truncate(pc.polyhedron(), pc.cone(), t); }

double hausdorff_distance(const TruncatedBody& a, const TruncatedBody& b) {
  double d = 0.0;
  for (const Vec& p : a.vertices) d = std::max(d, distance_to_hull(b.vertices, p));
  for (const Vec& p : b.vertices) d = std::max(d, distance_to_hull(a.vertices, p));
  return d;
}

double distance_from_origin(const PseudoCone& pc) {
  Vec y;
  if (!min_norm_point(pc.polyhedron(), y)) throw Error(Errc::InvalidInput, "empty body");
  return y.norm();
}

}  // namespace pcmk
