#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace pcmk;
using namespace pcmk::testing;

namespace {

const QuadratureConfig kCfg2 = QuadratureConfig::for_dim(2);
const QuadratureConfig kCfg3 = QuadratureConfig::for_dim(3);

}  // namespace

TEST(Measures, SingleFacetQuadrant) {
  const WeightFunction w(WeightKind::HeightPower, 1.5, q2());
  const PseudoCone k = q2_slab(1.0);
  const SurfaceMeasure s = surface_measure(k, w, kCfg2);
  EXPECT_NEAR(s.masses[0], 2.0, 1e-13);
  EXPECT_NEAR(covolume_euler(k, w, kCfg2).value, 4.0, 1e-13);
  EXPECT_NEAR(covolume_radial(k, w, kCfg2).value, 4.0, 1e-12);
}

TEST(Measures, SingleFacetSquarePyramid) {
  const WeightFunction w(WeightKind::HeightPower, 2.5, o3());
  const PseudoCone k = o3_slab(1.0);
  EXPECT_NEAR(surface_measure(k, w, kCfg3).masses[0], 4.0, 1e-12);
  EXPECT_NEAR(covolume_euler(k, w, kCfg3).value, 8.0, 1e-12);
  EXPECT_NEAR(covolume_radial(k, w, kCfg3).value, 8.0, 1e-8);
}

TEST(Measures, ThreeFacetClosedForm) {
  const double q = 1.5;
  const WeightFunction w(WeightKind::HeightPower, q, q2());
  const PseudoCone k = three_facet_q2();
  const SurfaceMeasure s = surface_measure(k, w, kCfg2);
  const double s_mid = 0.6 * std::sqrt(2.0) * std::pow(2.0, q / 2);
  const double h0 = 1.2 / std::sqrt(2.0), h1 = 1.0 / std::sqrt(2.0);
  const double s_side = std::sqrt(0.2) / (h0 - h1) * (std::pow(h1, 1 - q) - std::pow(h0, 1 - q)) / (q - 1);
  EXPECT_NEAR(s.masses[0], s_mid, 1e-13 * s_mid);
  EXPECT_NEAR(s.masses[1], s_side, 1e-13 * s_side);
  EXPECT_NEAR(s.masses[2], s_side, 1e-13 * s_side);
  EXPECT_NEAR(s.total, s_mid + 2 * s_side, 1e-12);
}

TEST(Measures, ThreeFacetRadialPowerBruteForce) {
  const WeightFunction w(WeightKind::RadialPower, 1.5, q2());
  const SurfaceMeasure s = surface_measure(three_facet_q2(), w, kCfg2);
  // Middle facet y = 1 - x for x in [0.2, 0.8].
  const double ref = simpson([](double x) { return std::sqrt(2.0) * std::pow(2 * x * x - 2 * x + 1, -0.75); }, 0.2, 0.8);
  EXPECT_NEAR(s.masses[0], ref, 1e-11 * ref);
}

TEST(Measures, EmptyFacetHasZeroMass) {
  // The second constraint only touches K at the vertex (1,0).
  const PseudoCone k = tighten(PseudoCone(q2(), {vec2(-1, -1), vec2(-1, -2)}, {1.0 / std::sqrt(2.0), 0.1}));
  const WeightFunction w(WeightKind::HeightPower, 1.5, q2());
  const SurfaceMeasure s = surface_measure(k, w, kCfg2);
  EXPECT_EQ(s.masses[1], 0.0);
  EXPECT_GT(s.masses[0], 0.0);
}

TEST(Measures, EulerNeedsTightenedFlag) {
  const WeightFunction w(WeightKind::HeightPower, 1.5, q2());
  const PseudoCone k(q2(), {vec2(-1, -1)}, {1.0});
  try {
    covolume_euler(k, w, kCfg2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotTightened);
  }
  EXPECT_NO_THROW(covolume_radial(k, w, kCfg2));
}

TEST(Measures, ExponentDomain) {
  const PseudoCone k = q2_slab(1.0);
  const WeightFunction low(WeightKind::HeightPower, 0.9, q2());
  const WeightFunction high(WeightKind::HeightPower, 2.5, q2());
  EXPECT_THROW(surface_measure(k, low, kCfg2), Error);
  EXPECT_NO_THROW(surface_measure(k, high, kCfg2));
  EXPECT_THROW(covolume_euler(k, high, kCfg2), Error);
  EXPECT_THROW(covolume_radial(k, high, kCfg2), Error);
}

TEST(Measures, DualRoutesOnRandomFixtures) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    for (WeightKind kind : {WeightKind::HeightPower, WeightKind::RadialPower}) {
      const PseudoCone k2 = random_tight_fixture(q2(), 20, seed);
      const WeightFunction w2(kind, 1.25 + 0.1 * static_cast<double>(seed % 6), q2());
      EXPECT_LE(rel(covolume_euler(k2, w2, kCfg2).value, covolume_radial(k2, w2, kCfg2).value), 1e-8);
      const PseudoCone k3 = random_tight_fixture(o3(), 12, seed);
      const WeightFunction w3(kind, 2.2 + 0.1 * static_cast<double>(seed % 6), o3());
      EXPECT_LE(rel(covolume_euler(k3, w3, kCfg3).value, covolume_radial(k3, w3, kCfg3).value), 1e-6);
    }
  }
}

TEST(Measures, Homogeneity) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    for (const ConePtr& c : {q2(), o3()}) {
      const int n = c->dim();
      const QuadratureConfig& cfg = n == 2 ? kCfg2 : kCfg3;
      const double q = n - 0.4;
      const WeightFunction w(WeightKind::RadialPower, q, c);
      const PseudoCone k = random_tight_fixture(c, 8, seed);
      const SurfaceMeasure s = surface_measure(k, w, cfg);
      const double v = covolume_euler(k, w, s).value;
      for (double t : {0.5, 2.0, 10.0}) {
        const PseudoCone kt = k.scaled(t);
        const SurfaceMeasure st = surface_measure(kt, w, cfg);
        for (std::size_t i = 0; i < k.size(); ++i) {
          EXPECT_NEAR(st.masses[i], std::pow(t, n - 1 - q) * s.masses[i], 1e-9 * st.masses[i]);
        }
        EXPECT_NEAR(covolume_euler(kt, w, cfg).value, std::pow(t, n - q) * v, 1e-9 * std::pow(t, n - q) * v);
      }
    }
  }
}

TEST(Measures, GradientIsSurfaceMeasure) {
  const WeightFunction w(WeightKind::HeightPower, 1.6, q2());
  const PseudoCone k = random_tight_fixture(q2(), 10, 5);
  const auto g = covolume_gradient(k, w, kCfg2);
  const double step = 1e-5;
  for (std::size_t i = 0; i < k.size(); ++i) {
    std::vector<double> hp = k.support_numbers(), hm = hp;
    hp[i] += step;
    hm[i] -= step;
    const double fd = (covolume_radial(k.with_support(hp), w, kCfg2).value -
                       covolume_radial(k.with_support(hm), w, kCfg2).value) / (2 * step);
    EXPECT_NEAR(fd, g[i], 1e-4 * g[i]);
  }
}

TEST(Measures, HessianMatchesFiniteDifferences) {
  for (const ConePtr& c : {q2(), o3()}) {
    const int n = c->dim();
    const QuadratureConfig& cfg = n == 2 ? kCfg2 : kCfg3;
    const WeightFunction w(WeightKind::HeightPower, n - 0.5, c);
    const PseudoCone k = random_tight_fixture(c, 6, 2);
    const SurfaceMeasure s = surface_measure(k, w, cfg);
    const Mat J = covolume_hessian(k, w, s, cfg);
    const double step = 1e-6;
    for (std::size_t j = 0; j < k.size(); ++j) {
      std::vector<double> hp = k.support_numbers(), hm = hp;
      hp[j] += step;
      hm[j] -= step;
      const auto sp = surface_measure(tighten(k.with_support(hp)), w, cfg).masses;
      const auto sm = surface_measure(tighten(k.with_support(hm)), w, cfg).masses;
      for (std::size_t i = 0; i < k.size(); ++i) {
        const double fd = (sp[i] - sm[i]) / (2 * step);
        EXPECT_NEAR(J(i, j), fd, 1e-4 * std::max(1.0, std::abs(J(i, i)))) << "n=" << n << " " << i << "," << j;
      }
    }
    // Homogeneity of degree n-1-q: J h = (n-1-q) S.
    const Eigen::Map<const Eigen::VectorXd> h(k.support_numbers().data(), k.size());
    const Eigen::VectorXd Jh = J * h;
    for (std::size_t i = 0; i < k.size(); ++i) EXPECT_NEAR(Jh[i], (n - 1 - w.q()) * s.masses[i], 1e-8);
  }
}
