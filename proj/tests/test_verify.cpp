#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace pcmk;
using namespace pcmk::testing;

TEST(Sampling, CounterUniformIsStateless) {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = counter_uniform(5, i, 0);
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_EQ(u, counter_uniform(5, i, 0));
    EXPECT_NE(u, counter_uniform(6, i, 0));
  }
}

TEST(Sampling, SphereSamplesAreUnitAndUniform) {
  // The fraction landing in the quadrant estimates 1/4 of the circle.
  int inside = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const Vec v = sphere_sample(2, 3, static_cast<std::uint64_t>(i));
    EXPECT_NEAR(v.norm(), 1.0, 1e-14);
    inside += v[0] > 0 && v[1] > 0;
  }
  EXPECT_NEAR(static_cast<double>(inside) / n, 0.25, 4 * std::sqrt(0.25 * 0.75 / n));
  // Octant of the 2-sphere: 1/8.
  int oct = 0;
  for (int i = 0; i < n; ++i) {
    const Vec v = sphere_sample(3, 9, static_cast<std::uint64_t>(i));
    oct += v[0] > 0 && v[1] > 0 && v[2] > 0;
  }
  EXPECT_NEAR(static_cast<double>(oct) / n, 0.125, 4 * std::sqrt(0.125 * 0.875 / n));
}

TEST(MonteCarlo, SingleFacetSurfaceMeasure) {
  const WeightFunction w(WeightKind::HeightPower, 1.5, q2());
  const auto est = mc_surface_measure(q2_slab(1.0), w, 1000000, 17);
  ASSERT_EQ(est.size(), 1u);
  EXPECT_GT(est[0].std_error, 0.0);
  EXPECT_LE(std::abs(est[0].estimate - 2.0), 3.0 * est[0].std_error);
}

TEST(MonteCarlo, MultiFacetAgainstQuadrature) {
  const WeightFunction w(WeightKind::RadialPower, 1.5, q2());
  const PseudoCone k = three_facet_q2();
  const auto s = surface_measure(k, w, QuadratureConfig::for_dim(2));
  const auto est = mc_surface_measure(k, w, 1000000, 23);
  for (std::size_t i = 0; i < k.size(); ++i) EXPECT_LE(std::abs(est[i].estimate - s.masses[i]), 3.0 * est[i].std_error);
}

TEST(MonteCarlo, EmptyFacetGetsNoHits) {
  const PseudoCone k = tighten(PseudoCone(q2(), {vec2(-1, -1), vec2(-1, -2)}, {1.0 / std::sqrt(2.0), 0.1}));
  const WeightFunction w(WeightKind::HeightPower, 1.5, q2());
  const auto est = mc_surface_measure(k, w, 100000, 1);
  EXPECT_EQ(est[1].hits, 0u);
  EXPECT_EQ(est[1].estimate, 0.0);
}

TEST(MonteCarlo, Reproducible) {
  const WeightFunction w(WeightKind::HeightPower, 2.4, o3());
  const PseudoCone k = random_tight_fixture(o3(), 8, 2);
  const auto a = mc_surface_measure(k, w, 200000, 99);
  const auto b = mc_surface_measure(k, w, 200000, 99);
  const auto c = mc_surface_measure(k, w, 200000, 100);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].estimate, b[i].estimate);
    EXPECT_EQ(a[i].std_error, b[i].std_error);
    EXPECT_EQ(a[i].hits, b[i].hits);
    EXPECT_EQ(a[i].seed, 99u);
    differs = differs || a[i].estimate != c[i].estimate;
  }
  EXPECT_TRUE(differs);
}

TEST(MonteCarlo, CovolumeAndTail) {
  const WeightFunction w(WeightKind::HeightPower, 1.5, q2());
  const PseudoCone k = q2_slab(1.0);
  const double T = truncation_height(k, w, 1e-6);
  EXPECT_LE(covolume_tail_bound(k, w, T), 1e-6);
  EXPECT_LT(covolume_tail_bound(k, w, 2 * T), covolume_tail_bound(k, w, T));
  const McCovolume mc = mc_covolume(k, w, 1000000, 4, T);
  EXPECT_LE(std::abs(mc.mc.estimate - 4.0), 3.0 * mc.mc.std_error + mc.tail_bound);

  // 2K has covolume 2^{n-q} V.
  const McCovolume mc2 = mc_covolume(k.scaled(2.0), w, 1000000, 5, truncation_height(k.scaled(2.0), w, 1e-6));
  EXPECT_LE(std::abs(mc2.mc.estimate - std::pow(2.0, 0.5) * 4.0), 3.0 * mc2.mc.std_error + mc2.tail_bound);
}

TEST(RadialDerivative, UniformInflation) {
  const PseudoCone k = q2_slab(1.0);
  const auto rep = radial_derivative_check(LogFamily{k, {1.0}}, 100, 3);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.samples, 100);
  EXPECT_LE(rep.max_rel_error_log, 1e-8);
}

TEST(RadialDerivative, RandomFixtures) {
  for (const ConePtr& c : {q2(), o3()}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const PseudoCone k = random_tight_fixture(c, 10, seed);
      std::vector<double> f(k.size());
      for (std::size_t i = 0; i < f.size(); ++i) f[i] = 0.5 + std::sin(1.0 + static_cast<double>(i * seed));
      const auto rep = radial_derivative_check(LogFamily{k, f}, 100, seed);
      EXPECT_TRUE(rep.passed) << rep.max_rel_error_log << " " << rep.max_rel_error_linear;
      EXPECT_GE(rep.samples, 100);
      EXPECT_NEAR(rep.order, 2.0, 0.1);
      EXPECT_TRUE(std::isfinite(rep.lipschitz_max));
    }
  }
}

TEST(RadialDerivative, JumpAcrossRidge) {
  // Directions on either side of the ridge of the two-facet body pick up f of their own facet.
  const PseudoCone k = restrict_to(three_facet_q2(), {0, 1});
  const std::vector<double> f = {1.0, -2.0};
  const LogFamily fam{k, f};
  const double t = 1e-4;
  for (const Vec& v : {vec2(1.0, 0.05).normalized(), vec2(1.0, 0.9).normalized()}) {
    const RadialValue r = radial_function(k, v);
    const double d = (std::log(radial_function(fam.at(t), v).rho) - std::log(radial_function(fam.at(-t), v).rho)) / (2 * t);
    EXPECT_NEAR(d, f[r.argmax[0]], 1e-8);
  }
}

TEST(Nonuniqueness, QuadrantHeightPower) {
  const auto c = q2();
  const WeightFunction w(WeightKind::HeightPower, 1.5, c);
  const auto pair = nonuniqueness_pair(c, w, QuadratureConfig::for_dim(2));
  EXPECT_NEAR(pair.t0, 4.0, 1e-12);
  EXPECT_NEAR(pair.t1, 2.0, 1e-12);
  EXPECT_NEAR(pair.mass_K, 1.0, 1e-8);
  EXPECT_NEAR(pair.mass_L, 1.0, 1e-8);
  EXPECT_GT(pair.hausdorff, 0.01);
  EXPECT_TRUE(pair.passed);
  // ϑ(t1) = 2^{1/2}, so F is C(t1) shrunk by 1/√2.
  EXPECT_NEAR(pair.shrink, 1.0 / std::sqrt(2.0), 1e-12);
  ASSERT_EQ(pair.facet_L.size(), 2u);
}

TEST(Nonuniqueness, SquarePyramidBothKinds) {
  const auto c = o3();
  for (WeightKind kind : {WeightKind::HeightPower, WeightKind::RadialPower}) {
    const WeightFunction w(kind, 2.5, c);
    const auto pair = nonuniqueness_pair(c, w, QuadratureConfig::for_dim(3));
    EXPECT_TRUE(pair.passed) << pair.mass_K << " " << pair.mass_L << " " << pair.hausdorff;
    EXPECT_EQ(pair.facet_L.size(), 4u);
  }
}

TEST(Nonuniqueness, DomainEnforced) {
  const WeightFunction w(WeightKind::HeightPower, 2.5, q2());
  EXPECT_THROW(nonuniqueness_pair(q2(), w, QuadratureConfig::for_dim(2)), Error);
}

TEST(FacetLocality, FullBetaIsIdentity) {
  const PseudoCone k = random_tight_fixture(q2(), 10, 8);
  std::vector<int> all;
  for (int i = 0; i < static_cast<int>(k.size()); ++i) all.push_back(i);
  const auto rep = lemma72_check(k, {0, static_cast<int>(k.size()) - 1}, all);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.compared_facets, 2);
  EXPECT_LE(rep.max_vertex_difference, 1e-12);
}

TEST(FacetLocality, ThreeDirectionQuadrant) {
  const auto rep = lemma72_check(three_facet_q2(), {1}, {0, 1});
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(rep.max_vertex_difference, 1e-9);
}

TEST(FacetLocality, MarginViolations) {
  const PseudoCone k = three_facet_q2();
  auto code = [&](const std::vector<int>& omega, const std::vector<int>& beta) {
    try {
      lemma72_check(k, omega, beta);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidInput;
  };
  EXPECT_EQ(code({2}, {0, 1}), Errc::MarginViolation);  // omega not inside beta
  EXPECT_EQ(code({0}, {0, 1}), Errc::MarginViolation);  // neighbour 2 outside beta
  // A direction closer than the margin to one outside beta.
  const PseudoCone close(q2(), {vec2(-1, -1), vec2(-1, -1.0005)}, {1.0, 1.0});
  try {
    lemma72_check(close, {0}, {0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MarginViolation);
  }
}

TEST(Continuity, AllKindsPass) {
  for (const ConePtr& c : {q2(), o3()}) {
    const WeightFunction w(WeightKind::RadialPower, c->dim() - 0.5, c);
    const PseudoCone k = random_tight_fixture(c, 8, 6);
    for (ContinuityKind kind : {ContinuityKind::Wulff, ContinuityKind::Restriction, ContinuityKind::Measure}) {
      const auto rep = continuity_suite(kind, k, w, 1, QuadratureConfig::for_dim(c->dim()));
      EXPECT_TRUE(rep.passed) << to_string(kind);
      EXPECT_TRUE(rep.monotone);
      EXPECT_LT(rep.discrepancy.back(), 1e-6);
    }
  }
}

TEST(Fixtures, RandomTightProperties) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (const ConePtr& c : {q2(), share(skewed_planar_cone()), o3(), share(triangular_cone())}) {
      const int cap = c->dim() == 2 ? 20 : 12;
      const PseudoCone k = random_tight_fixture(c, cap, seed);
      EXPECT_TRUE(k.tightened());
      EXPECT_LE(static_cast<int>(k.size()), cap);
      EXPECT_GE(k.size(), 1u);
      for (const Vec& u : k.directions()) EXPECT_GE(delta_C(*c, u), 0.1 - 1e-12);
      const FacetComplex fc = facet_complex(k);
      for (const Facet& f : fc.facets) EXPECT_FALSE(f.empty());
      // Same seed, same body.
      const PseudoCone again = random_tight_fixture(c, cap, seed);
      EXPECT_EQ(again.support_numbers(), k.support_numbers());
    }
  }
}
