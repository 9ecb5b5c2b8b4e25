#include "pcmk/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace pcmk {
namespace {

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

}  // namespace

double HPolyhedron::tolerance() const {
  double scale = 0.0;
  for (const Halfspace& h : halfspaces) scale = std::max(scale, std::abs(h.b));
  return kFacetTol * (scale > 0.0 ? scale : 1.0);
}

bool HPolyhedron::contains(const Vec& y, double tol) const {
  for (const Halfspace& h : halfspaces) {
    if (h.a.dot(y) > h.b + tol) return false;
  }
  return true;
}

std::vector<PolyVertex> enumerate_vertices(const HPolyhedron& poly) {
  const int n = poly.dim;
  const int m = static_cast<int>(poly.halfspaces.size());
  const double tol = poly.tolerance();
  std::vector<PolyVertex> out;

  for_each_subset(m, n, [&](const std::vector<int>& idx) {
    Mat a(n, n);
    Vec b(n);
    for (int r = 0; r < n; ++r) {
      a.row(r) = poly.halfspaces[idx[r]].a.transpose();
      b(r) = poly.halfspaces[idx[r]].b;
    }
    Eigen::FullPivLU<Mat> lu(a);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) return;
    Vec y = lu.solve(b);
    if (!y.allFinite() || !poly.contains(y, tol)) return;
    for (PolyVertex& v : out) {
      if ((v.point - y).norm() <= tol) return;
    }
    PolyVertex pv;
    pv.point = y;
    out.push_back(std::move(pv));
  });

  for (PolyVertex& v : out) {
    for (int i = 0; i < m; ++i) {
      const Halfspace& h = poly.halfspaces[i];
      if (std::abs(h.a.dot(v.point) - h.b) <= tol) v.active.push_back(i);
    }
  }
  return out;
}

std::vector<int> cyclic_order(const std::vector<Vec>& points, const Vec& normal) {
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  if (points.size() < 3) return order;
  Vec c = Vec::Zero(points[0].size());
  for (const Vec& p : points) c += p;
  c /= static_cast<double>(points.size());
  const Eigen::Vector3d nrm = normal.normalized();
  Eigen::Vector3d e1 = std::abs(nrm.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  e1 = (e1 - e1.dot(nrm) * nrm).normalized();
  const Eigen::Vector3d e2 = nrm.cross(e1);
  std::vector<double> key(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Eigen::Vector3d d = points[i] - c;
    key[i] = std::atan2(d.dot(e2), d.dot(e1));
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
  return order;
}

Vec nearest_point_in_hull(const std::vector<Vec>& points, const Vec& target) {
  const std::size_t k = points.size();
  if (k == 0) throw Error(Errc::InvalidInput, "nearest_point_in_hull: empty point set");
  std::vector<Vec> p(k);
  double max_sq = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    p[i] = points[i] - target;
    max_sq = std::max(max_sq, p[i].squaredNorm());
  }
  const double eps = 1e-15 * std::max(max_sq, 1e-300);

  std::size_t first = 0;
  for (std::size_t i = 1; i < k; ++i) {
    if (p[i].squaredNorm() < p[first].squaredNorm()) first = i;
  }
  std::vector<std::size_t> s{first};
  std::vector<double> w{1.0};
  Vec x = p[first];

  auto combine = [&]() {
    Vec r = Vec::Zero(x.size());
    for (std::size_t i = 0; i < s.size(); ++i) r += w[i] * p[s[i]];
    return r;
  };

  for (int major = 0; major < 1000; ++major) {
    std::size_t j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      const double d = x.dot(p[i]);
      if (d < best) {
        best = d;
        j = i;
      }
    }
    if (x.squaredNorm() - best <= eps * 10.0) break;
    if (std::find(s.begin(), s.end(), j) != s.end()) break;
    s.push_back(j);
    w.push_back(0.0);

    for (int minor = 0; minor < 1000; ++minor) {
      const int q = static_cast<int>(s.size());
      Mat sys = Mat::Zero(q + 1, q + 1);
      Vec rhs = Vec::Zero(q + 1);
      for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) sys(a, b) = p[s[a]].dot(p[s[b]]);
        sys(a, q) = 1.0;
        sys(q, a) = 1.0;
      }
      rhs(q) = 1.0;
      const Vec sol = sys.completeOrthogonalDecomposition().solve(rhs);
      const Vec alpha = sol.head(q);
      if ((alpha.array() > 1e-14).all()) {
        w.assign(alpha.data(), alpha.data() + q);
        x = combine();
        break;
      }
      double theta = 1.0;
      for (int a = 0; a < q; ++a) {
        if (alpha(a) <= 1e-14) {
          const double denom = w[a] - alpha(a);
          if (denom > 0) theta = std::min(theta, w[a] / denom);
        }
      }
      for (int a = 0; a < q; ++a) w[a] = theta * alpha(a) + (1.0 - theta) * w[a];
      std::vector<std::size_t> s2;
      std::vector<double> w2;
      for (int a = 0; a < q; ++a) {
        if (w[a] > 1e-14) {
          s2.push_back(s[a]);
          w2.push_back(w[a]);
        }
      }
      if (s2.empty()) {
        s2.push_back(s.back());
        w2.push_back(1.0);
      }
      const double total = std::accumulate(w2.begin(), w2.end(), 0.0);
      for (double& v : w2) v /= total;
      s = std::move(s2);
      w = std::move(w2);
      x = combine();
      if (s.size() == 1) break;
    }
  }
  return x + target;
}

double distance_to_hull(const std::vector<Vec>& points, const Vec& target) {
  return (nearest_point_in_hull(points, target) - target).norm();
}

bool min_norm_point(const HPolyhedron& poly, Vec& out) {
  const int n = poly.dim;
  const int m = static_cast<int>(poly.halfspaces.size());
  const double tol = poly.tolerance();
  bool found = false;
  double best = std::numeric_limits<double>::infinity();
  const Vec origin = Vec::Zero(n);
  if (poly.contains(origin, tol)) {
    out = origin;
    return true;
  }
  for (int k = 1; k <= n; ++k) {
    for_each_subset(m, k, [&](const std::vector<int>& idx) {
      Mat a(k, n);
      Vec b(k);
      for (int r = 0; r < k; ++r) {
        a.row(r) = poly.halfspaces[idx[r]].a.transpose();
        b(r) = poly.halfspaces[idx[r]].b;
      }
      Eigen::FullPivLU<Mat> lu(a * a.transpose());
      lu.setThreshold(1e-12);
      if (!lu.isInvertible()) return;
      const Vec y = a.transpose() * lu.solve(b);
      if (!poly.contains(y, tol)) return;
      const double nrm = y.norm();
      if (nrm < best) {
        best = nrm;
        out = y;
        found = true;
      }
    });
  }
  return found;
}

}  // namespace pcmk
