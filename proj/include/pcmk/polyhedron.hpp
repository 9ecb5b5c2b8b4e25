#pragma once

#include "pcmk/types.hpp"

#include <vector>

namespace pcmk {

// <a, y> <= b
struct Halfspace {
  Vec a;
  double b = 0.0;
};

struct PolyVertex {
  Vec point;
  std::vector<int> active;  // indices of halfspaces tight at the vertex (sorted)
};

/// Intersection of finitely many closed halfspaces. Only small dimensions
/// (n <= 3 in practice) are supported by the enumeration routines.
struct HPolyhedron {
  int dim = 0;
  std::vector<Halfspace> halfspaces;

  bool contains(const Vec& y, double tol) const;
  // Scale-aware incidence tolerance derived from kFacetTol.
  double tolerance() const;
};

/// Vertices of a line-free polyhedron by enumerating n-subsets of the
/// constraints. Duplicates are merged within the polyhedron tolerance and
/// their active sets united.
std::vector<PolyVertex> enumerate_vertices(const HPolyhedron& poly);

/// Orders coplanar points cyclically inside the plane with unit normal `normal`.
std::vector<int> cyclic_order(const std::vector<Vec>& points, const Vec& normal);

/// Point of conv(points) closest to `target` (Wolfe's minimum-norm-point
/// algorithm). Exact up to floating point in any dimension.
Vec nearest_point_in_hull(const std::vector<Vec>& points, const Vec& target);

double distance_to_hull(const std::vector<Vec>& points, const Vec& target);

/// Point of minimal Euclidean norm in the polyhedron, found by projecting
/// the origin onto the affine hull of every face of dimension >= 0 spanned
/// by up to n constraints. Returns false if the polyhedron is empty.
bool min_norm_point(const HPolyhedron& poly, Vec& out);

}  // namespace pcmk
