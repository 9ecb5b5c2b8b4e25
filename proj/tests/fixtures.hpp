#pragma once

#include "pcmk/verify.hpp"

#include <cmath>
#include <functional>

namespace pcmk::testing {

inline Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

inline Vec vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

inline ConePtr q2() { return share(quadrant_cone()); }
inline ConePtr o3() { return share(square_pyramid_cone()); }

// Q2 body bounded by x+y >= 1, x+2y >= 1.2, 2x+y >= 1.2. Vertices
// (1.2,0), (0.8,0.2), (0.2,0.8), (0,1.2); every facet is a segment.
inline PseudoCone three_facet_q2() {
  const double r5 = std::sqrt(5.0);
  return PseudoCone(q2(), {vec2(-1, -1), vec2(-1, -2), vec2(-2, -1)},
                    {1.0 / std::sqrt(2.0), 1.2 / r5, 1.2 / r5}, true);
}

// Single facet C(t) + C of the quadrant at height t.
inline PseudoCone q2_slab(double t) { return PseudoCone(q2(), {vec2(-1, -1)}, {t}, true); }

// Single facet {z = 1} of the square pyramid.
inline PseudoCone o3_slab(double t) { return PseudoCone(o3(), {vec3(0, 0, -1)}, {t}, true); }

// Composite Simpson rule with many panels: a brute-force 1-D reference.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels = 200000) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace pcmk::testing
