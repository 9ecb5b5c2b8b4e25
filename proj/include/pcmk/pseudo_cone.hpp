#pragma once

#include "pcmk/cone.hpp"
#include "pcmk/polyhedron.hpp"

#include <vector>

namespace pcmk {

/// Polyhedral C-pseudo-cone in Wulff-shape form
///   [h] = C ∩ ⋂_i {y : <y, u_i> <= -h_i},
/// with every u_i in int Ω_{C°} and every h_i > 0.
class PseudoCone {
 public:
  /// Validates the invariants; throws OutsideDualInterior, NonPositiveSupport
  /// or DuplicateDirection. Directions are normalized.
  PseudoCone(ConePtr cone, std::vector<Vec> directions, std::vector<double> support,
             bool tightened = false);

  const Cone& cone() const { return *cone_; }
  const ConePtr& cone_ptr() const { return cone_; }
  int dim() const { return cone_->dim(); }
  std::size_t size() const { return directions_.size(); }
  const std::vector<Vec>& directions() const { return directions_; }
  const std::vector<double>& support_numbers() const { return support_; }
  bool tightened() const { return tightened_; }

  /// Cone facets first (b = 0), then one halfspace per direction.
  HPolyhedron polyhedron() const;
  /// Index of direction i inside polyhedron().halfspaces.
  int halfspace_index(std::size_t i) const { return static_cast<int>(cone_->facet_normals().size() + i); }

  /// The body t·K (support numbers scaled by t > 0).
  PseudoCone scaled(double t) const;
  /// Same directions, new support numbers (tightened flag cleared).
  PseudoCone with_support(std::vector<double> support) const;

  /// A point strictly inside the body along v.
  Vec interior_point() const;

 private:
  ConePtr cone_;
  std::vector<Vec> directions_;
  std::vector<double> support_;
  bool tightened_ = false;
};

struct RadialValue {
  double rho = 0.0;
  std::vector<int> argmax;  // indices i attaining max h_i/|<v,u_i>|
};

/// ρ_K(v) = max_i h_i / |<v, u_i>| for v ∈ int C. Throws OutsideDomain.
RadialValue radial_function(const PseudoCone& pc, const Vec& v);

/// h_K(u) = max over vertices of <u, y> (< 0) for u ∈ int Ω_{C°}.
/// Throws OutsideDualInterior.
double support_function(const PseudoCone& pc, const Vec& u);

struct Facet {
  std::vector<int> vertex_ids;  // n=2: two endpoints ordered along the line; n=3: cyclic
  std::vector<Vec> vertices;
  bool empty() const { return vertices.empty(); }
};

// An (n-2)-face shared by two constraints. Constraint ids follow
// PseudoCone::polyhedron() numbering; negative values never occur.
struct Ridge {
  int first = 0;
  int second = 0;
  std::vector<int> vertex_ids;  // n=2: one vertex; n=3: the two edge endpoints
};

struct FacetComplex {
  int dim = 0;
  std::vector<Vec> vertices;
  std::vector<std::vector<int>> vertex_active;  // active constraints per vertex
  std::vector<Facet> facets;                    // one per direction of the pseudo-cone
  std::vector<Ridge> ridges;
  std::size_t cone_facets = 0;                  // constraint ids below this are cone facets
};

/// Facets F_i = K ∩ {<y,u_i> = -h_i} for n ∈ {2,3}. Empty facets are kept as
/// empty entries. Throws UnsupportedDimension.
FacetComplex facet_complex(const PseudoCone& pc);

/// Replaces each h_i by h̄_K(u_i); the point set is unchanged.
PseudoCone tighten(const PseudoCone& pc);

/// K^{(β)}: the tightened body restricted to the direction indices in `beta`.
/// Throws EmptySubset.
PseudoCone restrict_to(const PseudoCone& pc, const std::vector<int>& beta);

/// Bounded polytope K ∩ C^-(t).
struct TruncatedBody {
  HPolyhedron polytope;
  double height = 0.0;
  std::vector<Vec> vertices;
};

/// Truncates an arbitrary polyhedron contained in C (used for bodies that
/// are not in Wulff form). Throws EmptyTruncation.
TruncatedBody truncate(const HPolyhedron& body, const Cone& cone, double t);
TruncatedBody truncate(const PseudoCone& pc, double t);

/// Hausdorff distance between two truncated bodies (maximum of the directed
/// vertex-to-hull distances).
double hausdorff_distance(const TruncatedBody& a, const TruncatedBody& b);

/// Distance of K from the origin, b(K).
double distance_from_origin(const PseudoCone& pc);

}  // namespace pcmk
