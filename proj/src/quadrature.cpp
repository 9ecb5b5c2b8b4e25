#include "pcmk/quadrature.hpp"

#include "pcmk/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace pcmk {
namespace {

constexpr double kRoundoffFloor = 1e-15;
constexpr int kMaxTriangleDepth = 14;

double triangle_area(const Vec& a, const Vec& b, const Vec& c) {
  const Vec u = b - a;
  const Vec v = c - a;
  if (u.size() == 2) return 0.5 * std::abs(u(0) * v(1) - u(1) * v(0));
  if (u.size() == 3) return 0.5 * Eigen::Vector3d(u).cross(Eigen::Vector3d(v)).norm();
  const double uu = u.squaredNorm();
  const double vv = v.squaredNorm();
  const double uv = u.dot(v);
  return 0.5 * std::sqrt(std::max(uu * vv - uv * uv, 0.0));
}

double triangle_rule(const std::function<double(const Vec&)>& g, const Vec& a, const Vec& b, const Vec& c) {
  const double area = triangle_area(a, b, c);
  if (area == 0.0) return 0.0;
  double s = 0.0;
  for (const TriangleNode& nd : triangle_rule_degree8()) {
    s += nd.weight * g(nd.l0 * a + nd.l1 * b + nd.l2 * c);
  }
  return area * s;
}

QuadResult refine_triangle(const std::function<double(const Vec&)>& g, const Vec& a, const Vec& b, const Vec& c,
                           double whole, double abs_tol, int depth) {
  const Vec ab = 0.5 * (a + b);
  const Vec bc = 0.5 * (b + c);
  const Vec ca = 0.5 * (c + a);
  const double t0 = triangle_rule(g, a, ab, ca);
  const double t1 = triangle_rule(g, ab, b, bc);
  const double t2 = triangle_rule(g, ca, bc, c);
  const double t3 = triangle_rule(g, ab, bc, ca);
  const double sum = t0 + t1 + t2 + t3;
  const double err = std::abs(sum - whole);
  if (err <= abs_tol || err <= kRoundoffFloor * std::abs(sum)) return {sum, err};
  if (depth <= 0) throw Error(Errc::ToleranceNotMet, "triangle quadrature did not reach the requested tolerance");
  QuadResult r;
  const double sub = abs_tol / 4.0;
  for (const auto& part : {refine_triangle(g, a, ab, ca, t0, sub, depth - 1),
                           refine_triangle(g, ab, b, bc, t1, sub, depth - 1),
                           refine_triangle(g, ca, bc, c, t2, sub, depth - 1),
                           refine_triangle(g, ab, bc, ca, t3, sub, depth - 1)}) {
    r.value += part.value;
    r.error += part.error;
  }
  return r;
}

double gauss_panel(const std::function<double(double)>& f, double a, double b, const GaussRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) s += rule.weights[k] * f(mid + half * rule.nodes[k]);
  return half * s;
}

QuadResult refine_interval(const std::function<double(double)>& f, double a, double b, double whole,
                           double abs_tol, int depth, const GaussRule& rule) {
  const double m = 0.5 * (a + b);
  const double left = gauss_panel(f, a, m, rule);
  const double right = gauss_panel(f, m, b, rule);
  const double err = std::abs(left + right - whole);
  if (err <= abs_tol || err <= kRoundoffFloor * std::abs(left + right)) return {left + right, err};
  if (depth <= 0) throw Error(Errc::ToleranceNotMet, "1-D quadrature did not reach the requested tolerance");
  const QuadResult l = refine_interval(f, a, m, left, abs_tol / 2.0, depth - 1, rule);
  const QuadResult r = refine_interval(f, m, b, right, abs_tol / 2.0, depth - 1, rule);
  return {l.value + r.value, l.error + r.error};
}

// ∫_0^1 (alpha + beta s)^{-q} ds in closed form.
double height_power_antiderivative(double alpha, double beta, double q) {
  const double x = beta / alpha;
  if (std::abs(x) < 1e-6) {
    return std::pow(alpha, -q) * (1.0 - q * x / 2.0 + q * (q + 1.0) * x * x / 6.0);
  }
  const double l = std::log1p(x);
  if (std::abs(1.0 - q) < 1e-12) return l / beta;
  return std::pow(alpha, 1.0 - q) * std::expm1((1.0 - q) * l) / (beta * (1.0 - q));
}

// ∫ over the central projection of the flat triangle (a,b,c) onto the sphere.
double spherical_flat_triangle(const std::function<double(const Vec&)>& f, const Vec& a, const Vec& b,
                               const Vec& c, const QuadratureConfig& cfg) {
  Eigen::Vector3d n3 = (Eigen::Vector3d(b - a)).cross(Eigen::Vector3d(c - a));
  if (n3.norm() == 0.0) return 0.0;
  n3.normalize();
  const double d = std::abs(n3.dot(Eigen::Vector3d(a)));
  auto g = [&](const Vec& p) {
    const double r = p.norm();
    return f(p / r) * d / (r * r * r);
  };
  return adaptive_triangle(g, a, b, c, cfg).value;
}

double flat_polygon_area(const std::vector<Vec>& poly) {
  Eigen::Vector3d acc = Eigen::Vector3d::Zero();
  for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
    acc += Eigen::Vector3d(poly[k] - poly[0]).cross(Eigen::Vector3d(poly[k + 1] - poly[0]));
  }
  return 0.5 * acc.norm();
}

// Keeps the part of a convex polygon with <p, g> <= 0 (sign = 1) or >= 0 (sign = -1).
std::vector<Vec> clip_polygon(const std::vector<Vec>& poly, const Vec& g, double sign) {
  std::vector<Vec> out;
  const std::size_t k = poly.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Vec& p = poly[i];
    const Vec& q = poly[(i + 1) % k];
    const double sp = sign * p.dot(g);
    const double sq = sign * q.dot(g);
    if (sp <= 0) out.push_back(p);
    if ((sp < 0 && sq > 0) || (sp > 0 && sq < 0)) {
      const double t = sp / (sp - sq);
      out.push_back(p + t * (q - p));
    }
  }
  // Cuts through a vertex produce near-duplicates that would leave slivers.
  std::vector<Vec> clean;
  for (const Vec& p : out) {
    if (clean.empty() || (p - clean.back()).norm() > 1e-13 * p.norm()) clean.push_back(p);
  }
  while (clean.size() > 1 && (clean.front() - clean.back()).norm() <= 1e-13 * clean.front().norm()) clean.pop_back();
  return clean;
}

double integrate_partitioned_polygon(const std::function<double(const Vec&)>& f, const std::vector<Vec>& poly,
                                     const LinearMinPartition& part, const QuadratureConfig& cfg, int depth) {
  if (poly.size() < 3) return 0.0;
  double scale = 0.0;
  for (const Vec& p : poly) scale = std::max(scale, p.norm());
  if (flat_polygon_area(poly) <= 1e-26 * scale * scale) return 0.0;

  Vec centroid = Vec::Zero(poly[0].size());
  for (const Vec& p : poly) centroid += p;
  centroid /= static_cast<double>(poly.size());
  const int i = part.cell_of(centroid);

  double worst = 0.0;
  int worst_j = -1;
  double form_scale = 0.0;
  for (const Vec& a : part.forms) form_scale = std::max(form_scale, a.norm());
  for (const Vec& p : poly) {
    const double lim = 1e-12 * form_scale * p.norm();
    const double own = p.dot(part.forms[i]);
    for (std::size_t j = 0; j < part.forms.size(); ++j) {
      const double excess = own - p.dot(part.forms[j]);
      if (excess > lim && excess > worst) {
        worst = excess;
        worst_j = static_cast<int>(j);
      }
    }
  }
  if (worst_j < 0 || depth <= 0) {
    const double area = flat_polygon_area(poly);
    double s = 0.0;
    for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
      if (triangle_area(poly[0], poly[k], poly[k + 1]) <= 1e-13 * area) continue;
      s += spherical_flat_triangle(f, poly[0], poly[k], poly[k + 1], cfg);
    }
    return s;
  }
  const Vec g = part.forms[i] - part.forms[worst_j];
  return integrate_partitioned_polygon(f, clip_polygon(poly, g, 1.0), part, cfg, depth - 1) +
         integrate_partitioned_polygon(f, clip_polygon(poly, g, -1.0), part, cfg, depth - 1);
}

}  // namespace

QuadratureConfig QuadratureConfig::for_dim(int dim) {
  QuadratureConfig c;
  c.tolerance = dim <= 2 ? 1e-10 : 1e-8;
  return c;
}

void QuadratureConfig::validate() const {
  if (!(tolerance > 0.0)) throw Error(Errc::InvalidInput, "quadrature tolerance must be positive");
  if (max_depth < 1) throw Error(Errc::InvalidInput, "quadrature depth must be at least 1");
  if (gauss_order < 1 || gauss_order > 64) throw Error(Errc::InvalidInput, "Gauss order must lie in [1, 64]");
}

const GaussRule& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

QuadResult adaptive_gauss(const std::function<double(double)>& f, double a, double b, const QuadratureConfig& cfg) {
  cfg.validate();
  if (a == b) return {};
  const GaussRule& rule = gauss_legendre(cfg.gauss_order);
  const double whole = gauss_panel(f, a, b, rule);
  const double abs_tol = std::max(cfg.tolerance * std::abs(whole), 1e-300);
  return refine_interval(f, a, b, whole, abs_tol, cfg.max_depth, rule);
}

const std::vector<TriangleNode>& triangle_rule_degree8() {
  static const std::vector<TriangleNode> rule = [] {
    std::vector<TriangleNode> r;
    const double third = 1.0 / 3.0;
    r.push_back({third, third, third, 0.144315607677787});
    auto orbit3 = [&](double a, double b, double w) {
      r.push_back({a, b, b, w});
      r.push_back({b, a, b, w});
      r.push_back({b, b, a, w});
    };
    orbit3(0.081414823414554, 0.459292588292723, 0.095091634267285);
    orbit3(0.658861384496480, 0.170569307751760, 0.103217370534718);
    orbit3(0.898905543365938, 0.050547228317031, 0.032458497623198);
    const double a = 0.008394777409958, b = 0.263112829634638, c = 0.728492392955404;
    const double w = 0.027230314174435;
    r.push_back({a, b, c, w});
    r.push_back({a, c, b, w});
    r.push_back({b, a, c, w});
    r.push_back({b, c, a, w});
    r.push_back({c, a, b, w});
    r.push_back({c, b, a, w});
    // The tabulated weights carry 15 digits; renormalize so constants integrate exactly.
    double total = 0.0;
    for (const auto& nd : r) total += nd.weight;
    for (auto& nd : r) nd.weight /= total;
    return r;
  }();
  return rule;
}

QuadResult adaptive_triangle(const std::function<double(const Vec&)>& g, const Vec& a, const Vec& b, const Vec& c,
                             const QuadratureConfig& cfg) {
  cfg.validate();
  const double whole = triangle_rule(g, a, b, c);
  if (whole == 0.0 && triangle_area(a, b, c) == 0.0) return {};
  const double abs_tol = std::max(cfg.tolerance * std::abs(whole), 1e-300);
  return refine_triangle(g, a, b, c, whole, abs_tol, std::min(cfg.max_depth, kMaxTriangleDepth));
}

double segment_integral(const WeightFunction& w, const Vec& a, const Vec& b, const QuadratureConfig& cfg) {
  const double scale = std::max(a.norm(), b.norm());
  const Vec d = b - a;
  const double len = d.norm();
  // Distance from the origin to the segment.
  double s = len > 0 ? std::clamp(-a.dot(d) / (len * len), 0.0, 1.0) : 0.0;
  if ((a + s * d).norm() <= 1e-12 * std::max(scale, 1e-300)) {
    throw Error(Errc::SegmentThroughOrigin, "segment meets the origin");
  }
  if (!w.cone().contains(a, 1e-12) || !w.cone().contains(b, 1e-12)) {
    throw Error(Errc::OutsideCone, "segment leaves the cone");
  }
  if (len == 0.0) return 0.0;
  Vec y(a.size());
  auto f = [&](double t) {
    y = a + t * d;
    return w(y);
  };
  const double value = len * adaptive_gauss(f, 0.0, 1.0, cfg).value;
  if (w.kind() == WeightKind::HeightPower) {
    const Vec& v = w.cone().v_frak();
    const double exact = len * height_power_antiderivative(a.dot(v), d.dot(v), w.q());
    if (std::abs(value - exact) > std::max(100.0 * cfg.tolerance, 1e-13) * std::abs(exact)) {
      throw Error(Errc::ToleranceNotMet, "segment quadrature disagrees with the closed-form antiderivative");
    }
  }
  return value;
}

double polygon_integral(const WeightFunction& w, const std::vector<Vec>& polygon, const QuadratureConfig& cfg) {
  if (polygon.size() < 3) throw Error(Errc::DegeneratePolygon, "polygon needs at least three vertices");
  double scale = 0.0;
  for (const Vec& p : polygon) {
    scale = std::max(scale, p.norm());
    if (!w.cone().contains(p, 1e-12)) throw Error(Errc::OutsideCone, "polygon vertex lies outside the cone");
  }
  const double area = flat_polygon_area(polygon);
  if (!(area > 1e-14 * scale * scale)) throw Error(Errc::DegeneratePolygon, "polygon has zero area");
  if (distance_to_hull(polygon, Vec::Zero(polygon[0].size())) <= 1e-12 * scale) {
    throw Error(Errc::OriginArgument, "polygon contains the origin");
  }
  Vec c = Vec::Zero(polygon[0].size());
  for (const Vec& p : polygon) c += p;
  c /= static_cast<double>(polygon.size());
  auto g = [&](const Vec& y) { return w(y); };
  double total = 0.0;
  for (std::size_t k = 0; k < polygon.size(); ++k) {
    total += adaptive_triangle(g, c, polygon[k], polygon[(k + 1) % polygon.size()], cfg).value;
  }
  return total;
}

double cross_section_theta(const WeightFunction& w, double t, const QuadratureConfig& cfg) {
  if (!(t > 0.0)) throw Error(Errc::InvalidInput, "cross-section height must be positive");
  const int n = w.dim();
  if (n != 2 && n != 3) throw Error(Errc::UnsupportedDimension, "cross sections are integrated for n = 2, 3");
  const auto sec = w.cone().cross_section(t);
  if (n == 2) return segment_integral(w, sec[0], sec[1], cfg);
  return polygon_integral(w, sec, cfg);
}

int LinearMinPartition::cell_of(const Vec& v) const {
  int best = 0;
  double val = v.dot(forms[0]);
  for (std::size_t i = 1; i < forms.size(); ++i) {
    const double x = v.dot(forms[i]);
    if (x < val) {
      val = x;
      best = static_cast<int>(i);
    }
  }
  return best;
}

double sphere_quadrature(const Cone& cone, const std::function<double(const Vec&)>& f, const QuadratureConfig& cfg,
                         const LinearMinPartition* partition) {
  cfg.validate();
  const int n = cone.dim();
  if (n == 2) {
    const Vec& r0 = cone.rays()[0];
    const Vec& r1 = cone.rays()[1];
    const Vec e1 = r0;
    const Vec e2 = (r1 - r1.dot(r0) * r0).normalized();
    const double span = angle_between(r0, r1);
    Vec v(2);
    auto g = [&](double phi) {
      v = std::cos(phi) * e1 + std::sin(phi) * e2;
      return f(v);
    };
    std::vector<double> cuts{0.0, span};
    if (partition) {
      const auto& forms = partition->forms;
      for (std::size_t i = 0; i < forms.size(); ++i) {
        for (std::size_t j = i + 1; j < forms.size(); ++j) {
          const Vec d = forms[i] - forms[j];
          const double base = std::atan2(-d.dot(e1), d.dot(e2));
          for (double phi : {base - std::numbers::pi, base, base + std::numbers::pi}) {
            if (phi > 0.0 && phi < span) cuts.push_back(phi);
          }
        }
      }
      std::sort(cuts.begin(), cuts.end());
      // Keep only cuts where the minimizing form actually changes.
      std::vector<double> kept{cuts.front()};
      auto label_at = [&](double phi) {
        Vec p(2);
        p << std::cos(phi), std::sin(phi);
        return partition->cell_of(p(0) * e1 + p(1) * e2);
      };
      for (std::size_t k = 1; k + 1 < cuts.size(); ++k) {
        const double left = 0.5 * (kept.back() + cuts[k]);
        const double right = 0.5 * (cuts[k] + cuts[k + 1]);
        if (cuts[k] - kept.back() <= 0.0) continue;
        if (label_at(left) != label_at(right)) kept.push_back(cuts[k]);
      }
      kept.push_back(cuts.back());
      cuts = std::move(kept);
    }
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      if (cuts[k + 1] > cuts[k]) total += adaptive_gauss(g, cuts[k], cuts[k + 1], cfg).value;
    }
    return total;
  }
  if (n == 3) {
    const Vec& v = cone.v_frak();
    const auto& rays = cone.rays();
    double total = 0.0;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      const std::vector<Vec> tri{v, rays[k], rays[(k + 1) % rays.size()]};
      if (partition) {
        total += integrate_partitioned_polygon(f, tri, *partition, cfg, 64);
      } else {
        total += spherical_flat_triangle(f, tri[0], tri[1], tri[2], cfg);
      }
    }
    return total;
  }
  throw Error(Errc::UnsupportedDimension, "sphere quadrature supports n = 2, 3");
}

double ball_covolume_density(const WeightFunction& w, const QuadratureConfig& cfg) {
  w.require_solver_range();
  const double n = w.dim();
  auto f = [&](const Vec& v) { return w(v); };
  return sphere_quadrature(w.cone(), f, cfg) / (n - w.q());
}

}  // namespace pcmk
