#pragma once

#include "pcmk/types.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace pcmk {

/// Pointed, full-dimensional polyhedral cone C = {y : <y, w_j> <= 0 for all j}
/// together with its extreme rays and the distinguished interior direction v.
///
/// The dual cone C° is generated by the facet normals w_j; its facets have
/// the rays of C as outer normals. Rays are stored in cyclic order for n = 3
/// (counter-clockwise seen from v) and as {first, second} for n = 2, with the
/// second ray counter-clockwise from the first.
class Cone {
 public:
  int dim() const { return dim_; }
  const std::vector<Vec>& facet_normals() const { return normals_; }
  const std::vector<Vec>& rays() const { return rays_; }
  const Vec& v_frak() const { return v_frak_; }
  // Outer normals of the facets of C° (the rays of C).
  const std::vector<Vec>& dual_facet_normals() const { return rays_; }

  double height(const Vec& y) const { return y.dot(v_frak_); }

  bool contains(const Vec& y, double tol = kInteriorMargin) const;
  // Strict interior with margin measured on the unit vector y/|y|.
  bool in_interior(const Vec& y, double margin = kInteriorMargin) const;
  // u in int C°: <u, r> < -margin for every ray r.
  bool in_dual_interior(const Vec& u, double margin = 0.0) const;

  // Vertices of the cross-section C(t) = C ∩ {<y,v> = t}, in ray order.
  std::vector<Vec> cross_section(double t) const;

  friend Cone make_cone_from_normals(int, std::vector<Vec>, std::optional<Vec>);
  friend Cone make_cone_from_rays(int, std::vector<Vec>, std::optional<Vec>);

 private:
  Cone() = default;
  int dim_ = 0;
  std::vector<Vec> normals_;
  std::vector<Vec> rays_;
  Vec v_frak_;
};

using ConePtr = std::shared_ptr<const Cone>;

/// Builds a cone from facet normals (C = {<y,w> <= 0}). Redundant normals
/// are dropped. If `v_frak` is omitted the normalized ray sum is used.
/// Throws NotPointed, NotFullDimensional or BadVFrak.
Cone make_cone_from_normals(int dim, std::vector<Vec> normals,
                            std::optional<Vec> v_frak = std::nullopt);

/// Builds a cone as the positive hull of `rays`. Same error contract.
Cone make_cone_from_rays(int dim, std::vector<Vec> rays,
                         std::optional<Vec> v_frak = std::nullopt);

inline ConePtr share(Cone c) { return std::make_shared<const Cone>(std::move(c)); }

/// Spherical distance of the unit vector u from the boundary of Ω_{C°};
/// positive iff u ∈ int C°, non-positive otherwise.
double delta_C(const Cone& cone, const Vec& u);

// Fixtures used throughout tests and the CLI defaults.
Cone quadrant_cone();       // Q2: the positive quadrant of R^2
Cone square_pyramid_cone(); // O3: {|x| <= z, |y| <= z}
Cone skewed_planar_cone();  // rays (1,0.2) and (-0.3,1)
Cone triangular_cone();     // three rays around the z-axis

}  // namespace pcmk
