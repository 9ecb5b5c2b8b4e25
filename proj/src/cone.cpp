#include "pcmk/cone.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>

namespace pcmk {
namespace {

constexpr double kCombTol = 1e-10;

void for_each_subset(int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k > m || k < 0) return;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

int rank_of(const std::vector<Vec>& vs, int dim) {
  if (vs.empty()) return 0;
  Mat m(static_cast<int>(vs.size()), dim);
  for (std::size_t i = 0; i < vs.size(); ++i) m.row(static_cast<int>(i)) = vs[i].transpose();
  Eigen::FullPivLU<Mat> lu(m);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

void push_unique(std::vector<Vec>& out, const Vec& v) {
  for (const Vec& w : out) {
    if (angle_between(w, v) < kDistinctAngle) return;
  }
  out.push_back(v);
}

// Generators g of the pointed cone {y : <y, a> <= 0 for all a in `constraints`}:
// for every (n-1)-subset with a one-dimensional kernel, keep the kernel
// direction whose sign satisfies all constraints.
std::vector<Vec> extreme_directions(const std::vector<Vec>& constraints, int dim) {
  std::vector<Vec> out;
  const int m = static_cast<int>(constraints.size());
  for_each_subset(m, dim - 1, [&](const std::vector<int>& idx) {
    Mat a(dim - 1, dim);
    for (int r = 0; r < dim - 1; ++r) a.row(r) = constraints[idx[r]].transpose();
    Eigen::FullPivLU<Mat> lu(a);
    lu.setThreshold(1e-10);
    if (lu.rank() != dim - 1) return;
    Mat ker = lu.kernel();
    if (ker.cols() != 1) return;
    Vec g = ker.col(0).normalized();
    for (double sign : {1.0, -1.0}) {
      Vec cand = sign * g;
      bool ok = true;
      for (const Vec& c : constraints) {
        if (c.dot(cand) > kCombTol) {
          ok = false;
          break;
        }
      }
      if (ok) push_unique(out, cand);
    }
  });
  return out;
}

void finalize(int dim, std::vector<Vec>& normals, std::vector<Vec>& rays, std::optional<Vec> v_frak,
              Vec& v_out) {
  if (v_frak) {
    if (v_frak->size() != dim || v_frak->norm() == 0.0) {
      throw Error(Errc::BadVFrak, "v_frak must be a nonzero vector of the cone dimension");
    }
    v_out = unit_vector(*v_frak);
  } else {
    Vec s = Vec::Zero(dim);
    for (const Vec& r : rays) s += r;
    v_out = unit_vector(s);
  }
  for (const Vec& w : normals) {
    if (!(v_out.dot(w) < -kInteriorMargin)) {
      throw Error(Errc::BadVFrak, "v_frak is not in the interior of C");
    }
  }
  for (const Vec& r : rays) {
    if (!(-v_out.dot(r) < -kInteriorMargin)) {
      throw Error(Errc::BadVFrak, "-v_frak is not in the interior of the dual cone");
    }
  }

  if (dim == 2) {
    // Second ray counter-clockwise from the first.
    const double cross = rays[0](0) * rays[1](1) - rays[0](1) * rays[1](0);
    if (cross < 0) std::swap(rays[0], rays[1]);
  } else if (dim == 3) {
    Vec e1 = rays[0] - rays[0].dot(v_out) * v_out;
    e1.normalize();
    Eigen::Vector3d v3 = v_out;
    Eigen::Vector3d e1_3 = e1;
    Vec e2 = v3.cross(e1_3);
    std::vector<std::pair<double, Vec>> keyed;
    for (const Vec& r : rays) keyed.emplace_back(std::atan2(r.dot(e2), r.dot(e1)), r);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < rays.size(); ++i) rays[i] = keyed[i].second;
  }
}

}  // namespace

Cone make_cone_from_normals(int dim, std::vector<Vec> normals, std::optional<Vec> v_frak) {
  if (dim < 2) throw Error(Errc::NotFullDimensional, "dimension must be at least 2");
  for (Vec& w : normals) {
    if (w.size() != dim || w.norm() == 0.0) throw Error(Errc::InvalidInput, "facet normal has wrong size or is zero");
    w = unit_vector(w);
  }
  if (rank_of(normals, dim) < dim) {
    throw Error(Errc::NotPointed, "facet normals do not span R^n; the cone contains a line");
  }
  std::vector<Vec> rays = extreme_directions(normals, dim);
  if (rank_of(rays, dim) < dim) {
    throw Error(Errc::NotFullDimensional, "extreme rays do not span R^n");
  }
  Cone c;
  c.dim_ = dim;
  // Canonical facet normals: the generators of C°, i.e. the extreme
  // directions of {x : <x, r> <= 0 for all rays r}.
  c.normals_ = extreme_directions(rays, dim);
  c.rays_ = std::move(rays);
  finalize(dim, c.normals_, c.rays_, std::move(v_frak), c.v_frak_);
  return c;
}

Cone make_cone_from_rays(int dim, std::vector<Vec> rays, std::optional<Vec> v_frak) {
  if (dim < 2) throw Error(Errc::NotFullDimensional, "dimension must be at least 2");
  for (Vec& r : rays) {
    if (r.size() != dim || r.norm() == 0.0) throw Error(Errc::InvalidInput, "ray has wrong size or is zero");
    r = unit_vector(r);
  }
  if (rank_of(rays, dim) < dim) {
    throw Error(Errc::NotFullDimensional, "rays do not span R^n");
  }
  std::vector<Vec> normals = extreme_directions(rays, dim);
  if (rank_of(normals, dim) < dim) {
    throw Error(Errc::NotPointed, "the positive hull of the rays contains a line");
  }
  Cone c;
  c.dim_ = dim;
  c.rays_ = extreme_directions(normals, dim);
  c.normals_ = std::move(normals);
  finalize(dim, c.normals_, c.rays_, std::move(v_frak), c.v_frak_);
  return c;
}

bool Cone::contains(const Vec& y, double tol) const {
  const double scale = y.norm();
  for (const Vec& w : normals_) {
    if (y.dot(w) > tol * scale) return false;
  }
  return true;
}

bool Cone::in_interior(const Vec& y, double margin) const {
  const double n = y.norm();
  if (n == 0.0) return false;
  for (const Vec& w : normals_) {
    if (!(y.dot(w) / n < -margin)) return false;
  }
  return true;
}

bool Cone::in_dual_interior(const Vec& u, double margin) const {
  for (const Vec& r : rays_) {
    if (!(u.dot(r) < -margin)) return false;
  }
  return true;
}

std::vector<Vec> Cone::cross_section(double t) const {
  std::vector<Vec> out;
  out.reserve(rays_.size());
  for (const Vec& r : rays_) out.push_back(r * (t / r.dot(v_frak_)));
  return out;
}

double delta_C(const Cone& cone, const Vec& u) {
  // For an interior point the nearest boundary point lies on one of the
  // great spheres {<x, r> = 0} bounding Ω_{C°}.
  double best = std::numeric_limits<double>::infinity();
  const Vec un = u.normalized();
  for (const Vec& r : cone.rays()) {
    best = std::min(best, std::asin(std::clamp(-un.dot(r), -1.0, 1.0)));
  }
  return best;
}

Cone quadrant_cone() {
  return make_cone_from_normals(2, {Vec::Unit(2, 1) * -1.0, Vec::Unit(2, 0) * -1.0});
}

Cone square_pyramid_cone() {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<Vec> normals;
  for (double sx : {1.0, -1.0}) {
    Vec w(3);
    w << sx * s, 0.0, -s;
    normals.push_back(w);
    Vec w2(3);
    w2 << 0.0, sx * s, -s;
    normals.push_back(w2);
  }
  return make_cone_from_normals(3, std::move(normals));
}

Cone skewed_planar_cone() {
  Vec r1(2), r2(2);
  r1 << 1.0, 0.2;
  r2 << -0.3, 1.0;
  return make_cone_from_rays(2, {r1, r2});
}

Cone triangular_cone() {
  std::vector<Vec> rays;
  for (int k = 0; k < 3; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 3.0;
    Vec r(3);
    r << std::cos(a), 0.8 * std::sin(a), 1.0;
    rays.push_back(r);
  }
  return make_cone_from_rays(3, std::move(rays));
}

}  // namespace pcmk
