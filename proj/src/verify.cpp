#include "pcmk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <set>

namespace pcmk {
namespace {

constexpr std::uint64_t kBlock = 65536;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double sphere_area(int dim) { return dim == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi; }

// Sums `k` per-sample quantities over `samples` draws in fixed blocks, then
// combines the block totals pairwise so the result does not depend on how
// blocks are scheduled.
template <class Fn>
void block_sums(std::uint64_t samples, std::size_t k, Fn&& sample, std::vector<double>& sum,
                std::vector<double>& sumsq, std::vector<std::uint64_t>& hits) {
  const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<std::vector<double>> bs(k, std::vector<double>(blocks, 0.0));
  std::vector<std::vector<double>> bq(k, std::vector<double>(blocks, 0.0));
  hits.assign(k, 0);
  std::vector<double> x(k);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    const std::uint64_t end = std::min(samples, (b + 1) * kBlock);
    for (std::uint64_t i = b * kBlock; i < end; ++i) {
      std::fill(x.begin(), x.end(), 0.0);
      sample(i, x.data());
      for (std::size_t j = 0; j < k; ++j) {
        if (x[j] == 0.0) continue;
        bs[j][b] += x[j];
        bq[j][b] += x[j] * x[j];
        ++hits[j];
      }
    }
  }
  sum.resize(k);
  sumsq.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    sum[j] = pairwise_sum(bs[j]);
    sumsq[j] = pairwise_sum(bq[j]);
  }
}

McEstimate finish_estimate(double sum, double sumsq, std::uint64_t n, std::uint64_t hits, std::uint64_t seed,
                           double area) {
  McEstimate e;
  e.samples = n;
  e.seed = seed;
  e.hits = hits;
  const double N = static_cast<double>(n);
  const double mean = sum / N;
  const double var = n > 1 ? std::max(0.0, (sumsq - sum * mean) / (N - 1.0)) : 0.0;
  e.estimate = area * mean;
  e.std_error = area * std::sqrt(var / N);
  return e;
}

std::vector<Vec> forms_of(const PseudoCone& pc) {
  std::vector<Vec> forms;
  for (std::size_t i = 0; i < pc.size(); ++i) forms.push_back(-pc.directions()[i] / pc.support_numbers()[i]);
  return forms;
}

// First index minimizing <v, a_i>; 1/min is ρ_K(v).
int radial_argmin(const std::vector<Vec>& forms, const Vec& v, double& value) {
  int best = 0;
  value = v.dot(forms[0]);
  for (std::size_t i = 1; i < forms.size(); ++i) {
    const double x = v.dot(forms[i]);
    if (x < value) {
      value = x;
      best = static_cast<int>(i);
    }
  }
  return best;
}

double section_measure(const Cone& cone, double t) {
  const auto sec = cone.cross_section(t);
  if (cone.dim() == 2) return (sec[1] - sec[0]).norm();
  Eigen::Vector3d acc = Eigen::Vector3d::Zero();
  for (std::size_t k = 1; k + 1 < sec.size(); ++k) {
    acc += Eigen::Vector3d(sec[k] - sec[0]).cross(Eigen::Vector3d(sec[k + 1] - sec[0]));
  }
  return 0.5 * acc.norm();
}

double facet_size(const Facet& f, int dim) {
  if (f.empty()) return 0.0;
  if (dim == 2) return (f.vertices[1] - f.vertices[0]).norm();
  Eigen::Vector3d acc = Eigen::Vector3d::Zero();
  for (std::size_t k = 1; k + 1 < f.vertices.size(); ++k) {
    acc += Eigen::Vector3d(f.vertices[k] - f.vertices[0]).cross(Eigen::Vector3d(f.vertices[k + 1] - f.vertices[0]));
  }
  return 0.5 * acc.norm();
}

Vec polygon_centroid(const std::vector<Vec>& pts) {
  if (pts.size() < 3) {
    Vec c = Vec::Zero(pts[0].size());
    for (const Vec& p : pts) c += p;
    return c / static_cast<double>(pts.size());
  }
  Vec c = Vec::Zero(pts[0].size());
  double total = 0.0;
  for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
    const double a =
        0.5 * Eigen::Vector3d(pts[k] - pts[0]).cross(Eigen::Vector3d(pts[k + 1] - pts[0])).norm();
    c += a * (pts[0] + pts[k] + pts[k + 1]) / 3.0;
    total += a;
  }
  return c / total;
}

double theta_over(const WeightFunction& w, const std::vector<Vec>& pts, const QuadratureConfig& cfg) {
  return pts.size() == 2 ? segment_integral(w, pts[0], pts[1], cfg) : polygon_integral(w, pts, cfg);
}

double max_vertex_height(const PseudoCone& pc) {
  double t = 0.0;
  for (const PolyVertex& v : enumerate_vertices(pc.polyhedron())) t = std::max(t, pc.cone().height(v.point));
  return t;
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t stream) {
  const std::uint64_t x = splitmix64(splitmix64(seed) ^ (index * 0xD1B54A32D192ED03ULL + stream));
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

Vec sphere_sample(int dim, std::uint64_t seed, std::uint64_t index) {
  const double phi = 2.0 * std::numbers::pi * counter_uniform(seed, index, 0);
  Vec v(dim);
  if (dim == 2) {
    v << std::cos(phi), std::sin(phi);
  } else if (dim == 3) {
    const double z = 2.0 * counter_uniform(seed, index, 1) - 1.0;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    v << r * std::cos(phi), r * std::sin(phi), z;
  } else {
    throw Error(Errc::UnsupportedDimension, "sphere sampling supports n = 2, 3");
  }
  return v;
}

std::vector<McEstimate> mc_surface_measure(const PseudoCone& pc, const WeightFunction& w, std::uint64_t samples,
                                           std::uint64_t seed) {
  w.require_finite_measure_range();
  if (samples == 0) throw Error(Errc::InvalidInput, "Monte Carlo needs at least one sample");
  const int n = pc.dim();
  const auto forms = forms_of(pc);
  const Cone& cone = pc.cone();
  auto sample = [&](std::uint64_t i, double* out) {
    const Vec v = sphere_sample(n, seed, i);
    if (!cone.in_interior(v, 0.0)) return;
    double m = 0.0;
    const int k = radial_argmin(forms, v, m);
    const double rho = 1.0 / m;
    out[k] = w(rho * v) * std::pow(rho, n - 1) / std::abs(v.dot(pc.directions()[k]));
  };
  std::vector<double> sum, sumsq;
  std::vector<std::uint64_t> hits;
  block_sums(samples, pc.size(), sample, sum, sumsq, hits);
  std::vector<McEstimate> out;
  for (std::size_t j = 0; j < pc.size(); ++j) {
    out.push_back(finish_estimate(sum[j], sumsq[j], samples, hits[j], seed, sphere_area(n)));
  }
  return out;
}

double covolume_tail_bound(const PseudoCone& pc, const WeightFunction& w, double T) {
  w.require_solver_range();
  const Cone& cone = pc.cone();
  const double t = radial_function(pc, cone.v_frak()).rho;
  if (!(T >= t)) throw Error(Errc::InvalidInput, "truncation height must be at least ρ_K(v)");
  const double q = w.q();
  const double c2 = section_measure(cone, 1.0);
  if (pc.dim() == 2) return c2 * t * std::pow(T, 1.0 - q) / (q - 1.0);
  if (pc.dim() == 3) {
    return c2 * (2.0 * t * std::pow(T, 2.0 - q) / (q - 2.0) - t * t * std::pow(T, 1.0 - q) / (q - 1.0));
  }
  throw Error(Errc::UnsupportedDimension, "tail bound supports n = 2, 3");
}

double truncation_height(const PseudoCone& pc, const WeightFunction& w, double abs_error) {
  if (!(abs_error > 0.0)) throw Error(Errc::InvalidInput, "tail error must be positive");
  double T = radial_function(pc, pc.cone().v_frak()).rho;
  for (int k = 0; k < 2000 && covolume_tail_bound(pc, w, T) > abs_error; ++k) T *= 2.0;
  return T;
}

McCovolume mc_covolume(const PseudoCone& pc, const WeightFunction& w, std::uint64_t samples, std::uint64_t seed,
                       double T) {
  w.require_solver_range();
  if (samples == 0) throw Error(Errc::InvalidInput, "Monte Carlo needs at least one sample");
  const int n = pc.dim();
  const double e = n - w.q();
  const auto forms = forms_of(pc);
  const Cone& cone = pc.cone();
  auto sample = [&](std::uint64_t i, double* out) {
    const Vec v = sphere_sample(n, seed, i);
    if (!cone.in_interior(v, 0.0)) return;
    double m = 0.0;
    radial_argmin(forms, v, m);
    const double r = std::min(1.0 / m, T / cone.height(v));
    out[0] = std::pow(r, e) * w(v) / e;
  };
  std::vector<double> sum, sumsq;
  std::vector<std::uint64_t> hits;
  block_sums(samples, 1, sample, sum, sumsq, hits);
  McCovolume r;
  r.mc = finish_estimate(sum[0], sumsq[0], samples, hits[0], seed, sphere_area(n));
  r.truncation = T;
  r.tail_bound = covolume_tail_bound(pc, w, T);
  return r;
}

PseudoCone LogFamily::at(double t) const {
  std::vector<double> h = base.support_numbers();
  for (std::size_t i = 0; i < h.size(); ++i) h[i] *= std::exp(t * f[i]);
  return base.with_support(std::move(h));
}

RadialDerivativeReport radial_derivative_check(const LogFamily& family, int count, std::uint64_t seed,
                                               double step, double tolerance) {
  if (family.f.size() != family.base.size()) throw Error(Errc::InvalidInput, "perturbation has wrong length");
  const PseudoCone base = tighten(family.base);
  const LogFamily fam{base, family.f};
  const int n = base.dim();
  const auto& h = base.support_numbers();
  double fmax = 0.0;
  for (double x : fam.f) fmax = std::max(fmax, std::abs(x));

  const PseudoCone lp = fam.at(step), lm = fam.at(-step);
  const PseudoCone lp2 = fam.at(0.5 * step), lm2 = fam.at(-0.5 * step);
  std::vector<double> hp = h, hm = h;
  for (std::size_t i = 0; i < h.size(); ++i) {
    hp[i] += step * fam.f[i];
    hm[i] -= step * fam.f[i];
  }
  const PseudoCone ip = base.with_support(hp), im = base.with_support(hm);
  // Order is measured at coarser steps where truncation error dominates rounding.
  const double so = 1e-2;
  const PseudoCone op = fam.at(so), om = fam.at(-so), op2 = fam.at(0.5 * so), om2 = fam.at(-0.5 * so);

  RadialDerivativeReport rep;
  std::vector<double> orders;
  for (std::uint64_t k = 0; rep.samples < count && k < static_cast<std::uint64_t>(count) * 1000; ++k) {
    const Vec v = sphere_sample(n, seed, k);
    if (!base.cone().in_interior(v, 1e-9)) continue;
    const RadialValue r0 = radial_function(base, v);
    // Distance to the ridge set, measured by the gap to the second best ratio.
    double second = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (static_cast<int>(i) == r0.argmax[0]) continue;
      second = std::max(second, h[i] / std::abs(v.dot(base.directions()[i])));
    }
    if (r0.argmax.size() != 1 || second >= r0.rho * (1.0 - 8.0 * fmax * so)) {
      ++rep.ridge_resamples;
      continue;
    }
    const int a = r0.argmax[0];
    const double fa = fam.f[a];
    const double rp = radial_function(lp, v).rho, rm = radial_function(lm, v).rho;
    const double dlog = (std::log(rp) - std::log(rm)) / (2.0 * step);
    rep.max_rel_error_log = std::max(rep.max_rel_error_log, std::abs(dlog - fa) / std::abs(fa));
    const double dlin = (radial_function(ip, v).rho - radial_function(im, v).rho) / (2.0 * step);
    const double want = fa * r0.rho / h[a];
    rep.max_rel_error_linear = std::max(rep.max_rel_error_linear, std::abs(dlin - want) / std::abs(want));
    rep.lipschitz_max = std::max(rep.lipschitz_max, std::abs(rp - r0.rho) / step);
    rep.lipschitz_max = std::max(rep.lipschitz_max, std::abs(radial_function(lp2, v).rho - r0.rho) / (0.5 * step));
    rep.lipschitz_max = std::max(rep.lipschitz_max, std::abs(radial_function(lm2, v).rho - r0.rho) / (0.5 * step));
    const double exact = fa * r0.rho;
    const double e1 = std::abs((radial_function(op, v).rho - radial_function(om, v).rho) / (2.0 * so) - exact);
    const double e2 = std::abs((radial_function(op2, v).rho - radial_function(om2, v).rho) / so - exact);
    if (e2 > 0.0 && e1 > 0.0) orders.push_back(std::log2(e1 / e2));
    ++rep.samples;
  }
  if (!orders.empty()) {
    std::nth_element(orders.begin(), orders.begin() + orders.size() / 2, orders.end());
    rep.order = orders[orders.size() / 2];
  }
  rep.passed = rep.samples >= count && rep.max_rel_error_log <= tolerance && rep.max_rel_error_linear <= tolerance &&
               std::isfinite(rep.lipschitz_max);
  return rep;
}

NonuniquenessPair nonuniqueness_pair(const ConePtr& cone, const WeightFunction& w, const QuadratureConfig& cfg) {
  w.require_solver_range();
  const int n = cone->dim();
  if (n != 2 && n != 3) throw Error(Errc::UnsupportedDimension, "the construction is implemented for n = 2, 3");
  const double q = w.q();
  const Vec& v = cone->v_frak();

  NonuniquenessPair out{PseudoCone(cone, {-v}, {1.0}), HPolyhedron{}, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, {}, 0.0, false};
  out.theta_one = cross_section_theta(w, 1.0, cfg);
  out.t0 = std::pow(out.theta_one, 1.0 / (q - n + 1.0));
  out.t1 = 0.5 * out.t0;
  out.K = tighten(PseudoCone(cone, {-v}, {out.t0}));

  const std::vector<Vec> sec = cone->cross_section(out.t1);
  const Vec c = polygon_centroid(sec);
  auto facet_at = [&](double s) {
    std::vector<Vec> pts;
    for (const Vec& p : sec) pts.push_back(c + s * (p - c));
    return pts;
  };
  auto excess = [&](double s) { return theta_over(w, facet_at(s), cfg) - 1.0; };
  double lo = 0.0, hi = 1.0;
  if (!(excess(hi) > 0.0)) throw Error(Errc::RootBracketFailure, "ϑ(t1) does not exceed 1");
  for (int k = 0; k < 200 && hi - lo > 1e-16; ++k) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? hi : lo) = mid;
  }
  out.shrink = 0.5 * (lo + hi);

  const Vec shift = (1.0 - out.shrink) * c;
  out.L.dim = n;
  for (const Vec& wj : cone->facet_normals()) out.L.halfspaces.push_back({wj, wj.dot(shift)});
  out.L.halfspaces.push_back({-v, -out.t1});
  const int base = static_cast<int>(out.L.halfspaces.size()) - 1;

  // Recover F from the H-representation of L.
  for (const PolyVertex& pv : enumerate_vertices(out.L)) {
    if (std::binary_search(pv.active.begin(), pv.active.end(), base)) out.facet_L.push_back(pv.point);
  }
  if (n == 2) {
    Vec tan(2);
    tan << -v(1), v(0);
    std::sort(out.facet_L.begin(), out.facet_L.end(), [&](const Vec& a, const Vec& b) { return a.dot(tan) < b.dot(tan); });
  } else {
    const auto order = cyclic_order(out.facet_L, -v);
    std::vector<Vec> sorted;
    for (int k : order) sorted.push_back(out.facet_L[k]);
    out.facet_L = std::move(sorted);
  }
  out.mass_L = theta_over(w, out.facet_L, cfg);
  out.mass_K = surface_measure(out.K, w, cfg).masses[0];
  out.hausdorff = hausdorff_distance(truncate(out.K, 2.0 * out.t0), truncate(out.L, *cone, 2.0 * out.t0));
  out.passed = std::abs(out.mass_K - 1.0) <= 1e-8 && std::abs(out.mass_L - 1.0) <= 1e-8 && out.hausdorff > 0.01;
  return out;
}

Lemma72Report lemma72_check(const PseudoCone& pc, const std::vector<int>& omega, const std::vector<int>& beta,
                            double margin) {
  const int m = static_cast<int>(pc.size());
  if (omega.empty() || beta.empty()) throw Error(Errc::EmptySubset, "omega and beta must be nonempty");
  const std::set<int> bset(beta.begin(), beta.end());
  const std::set<int> oset(omega.begin(), omega.end());
  for (int i : bset) {
    if (i < 0 || i >= m) throw Error(Errc::InvalidInput, "direction index out of range");
  }
  for (int i : oset) {
    if (!bset.count(i)) throw Error(Errc::MarginViolation, "omega direction " + std::to_string(i) + " is not in beta");
    const Vec& u = pc.directions()[i];
    if (delta_C(pc.cone(), u) < margin) {
      throw Error(Errc::MarginViolation, "omega direction " + std::to_string(i) + " is too close to ∂Ω_{C°}");
    }
    for (int j = 0; j < m; ++j) {
      if (!bset.count(j) && angle_between(u, pc.directions()[j]) < margin) {
        throw Error(Errc::MarginViolation, "omega direction " + std::to_string(i) + " is too close to a direction outside beta");
      }
    }
  }
  const PseudoCone tk = tighten(pc);
  const FacetComplex fc = facet_complex(tk);
  const int cf = static_cast<int>(fc.cone_facets);
  for (const Ridge& r : fc.ridges) {
    if (r.first < cf) continue;
    const int i = r.first - cf, j = r.second - cf;
    if ((oset.count(i) && !bset.count(j)) || (oset.count(j) && !bset.count(i))) {
      throw Error(Errc::MarginViolation, "a facet neighbour of an omega direction is outside beta");
    }
  }
  const PseudoCone kb = restrict_to(pc, beta);
  const FacetComplex fb = facet_complex(kb);
  const std::vector<int> bsorted(bset.begin(), bset.end());
  double scale = 0.0;
  for (double x : tk.support_numbers()) scale = std::max(scale, x);

  Lemma72Report rep;
  rep.passed = true;
  for (int i : oset) {
    const int k = static_cast<int>(std::lower_bound(bsorted.begin(), bsorted.end(), i) - bsorted.begin());
    const Facet& a = fc.facets[i];
    const Facet& b = fb.facets[k];
    ++rep.compared_facets;
    if (a.vertices.size() != b.vertices.size()) {
      rep.passed = false;
      rep.max_vertex_difference = std::numeric_limits<double>::infinity();
      continue;
    }
    for (const Vec& p : a.vertices) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec& q : b.vertices) best = std::min(best, (p - q).norm());
      rep.max_vertex_difference = std::max(rep.max_vertex_difference, best);
    }
  }
  if (rep.max_vertex_difference > 1e-9 * std::max(scale, 1.0)) rep.passed = false;
  return rep;
}

const char* to_string(ContinuityKind kind) {
  switch (kind) {
    case ContinuityKind::Wulff: return "wulff";
    case ContinuityKind::Restriction: return "restriction";
    case ContinuityKind::Measure: return "measure";
  }
  return "?";
}

ContinuityReport continuity_suite(ContinuityKind kind, const PseudoCone& pc, const WeightFunction& w,
                                  std::uint64_t seed, const QuadratureConfig& cfg, double threshold, int max_levels) {
  const PseudoCone base = tighten(pc);
  const auto& h = base.support_numbers();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> p(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) p[i] = h[i] * unit(rng);

  const double t = 2.0 * max_vertex_height(base);
  std::vector<int> beta;
  for (int i = 0; i < static_cast<int>((base.size() + 1) / 2); ++i) beta.push_back(i);

  std::optional<TruncatedBody> ref;
  std::vector<double> sref;
  if (kind == ContinuityKind::Wulff) ref = truncate(base, t);
  if (kind == ContinuityKind::Restriction) ref = truncate(restrict_to(base, beta), t);
  if (kind == ContinuityKind::Measure) sref = surface_measure(base, w, cfg).masses;

  ContinuityReport rep;
  double eps = 0.1;
  for (int level = 0; level < max_levels; ++level, eps *= 0.5) {
    std::vector<double> he = h;
    for (std::size_t i = 0; i < h.size(); ++i) he[i] += eps * p[i];
    const PseudoCone pe = base.with_support(he);
    double d = 0.0;
    if (kind == ContinuityKind::Wulff) {
      d = hausdorff_distance(truncate(pe, t), *ref);
    } else if (kind == ContinuityKind::Restriction) {
      d = hausdorff_distance(truncate(restrict_to(pe, beta), t), *ref);
    } else {
      const auto s = surface_measure(tighten(pe), w, cfg).masses;
      for (std::size_t i = 0; i < s.size(); ++i) d = std::max(d, std::abs(s[i] - sref[i]));
    }
    rep.eps.push_back(eps);
    rep.discrepancy.push_back(d);
    if (d < threshold) break;
  }
  rep.monotone = true;
  for (std::size_t k = 1; k < rep.discrepancy.size(); ++k) {
    if (rep.discrepancy[k] > rep.discrepancy[k - 1]) rep.monotone = false;
  }
  rep.passed = rep.monotone && !rep.discrepancy.empty() && rep.discrepancy.back() < threshold;
  return rep;
}

PseudoCone random_tight_fixture(const ConePtr& cone, int max_directions, std::uint64_t seed, double min_delta) {
  if (max_directions < 1) throw Error(Errc::InvalidInput, "fixture needs at least one direction");
  const int n = cone->dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> height(1.0, 1.01);
  const int lo = std::min(2, max_directions);
  const int m = std::uniform_int_distribution<int>(lo, max_directions)(rng);

  std::vector<Vec> dirs;
  std::vector<double> h;
  for (int tries = 0; static_cast<int>(dirs.size()) < m && tries < 100000; ++tries) {
    Vec u(n);
    for (int k = 0; k < n; ++k) u(k) = gauss(rng);
    u.normalize();
    if (delta_C(*cone, u) < min_delta) continue;
    bool far = true;
    for (const Vec& d : dirs) far = far && angle_between(u, d) > 0.02;
    if (!far) continue;
    // Tangent planes of <y,v> = sqrt(1 + |y_perp|^2), slightly pushed in.
    const double a = -u.dot(cone->v_frak());
    const double b = (u + a * cone->v_frak()).norm();
    if (b >= 0.98 * a) continue;
    dirs.push_back(u);
    h.push_back(std::sqrt(a * a - b * b) * height(rng));
  }
  if (dirs.empty()) throw Error(Errc::InvalidInput, "no admissible direction found");

  PseudoCone pc = tighten(PseudoCone(cone, dirs, h));
  for (int round = 0; round < 10; ++round) {
    const FacetComplex fc = facet_complex(pc);
    double biggest = 0.0;
    std::vector<double> size(pc.size());
    for (std::size_t i = 0; i < pc.size(); ++i) {
      size[i] = facet_size(fc.facets[i], n);
      biggest = std::max(biggest, size[i]);
    }
    const double scale = std::pow(pc.support_numbers()[0], n - 1);
    std::vector<Vec> kd;
    std::vector<double> kh;
    for (std::size_t i = 0; i < pc.size(); ++i) {
      if (size[i] > 0.02 * biggest && size[i] > 1e-6 * scale) {
        kd.push_back(pc.directions()[i]);
        kh.push_back(pc.support_numbers()[i]);
      }
    }
    if (kd.size() == pc.size()) return pc;
    pc = tighten(PseudoCone(cone, kd, kh));
  }
  return pc;
}

}  // namespace pcmk
