#include "pcmk/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

namespace pcmk {

DirectionalMeasure::DirectionalMeasure(const Cone& cone, std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw Error(Errc::InvalidMeasure, "measure needs at least one atom");
  margin_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    Atom& a = atoms_[i];
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) {
      throw Error(Errc::InvalidMeasure, "mass of atom " + std::to_string(i) + " must be positive and finite");
    }
    if (a.direction.size() != cone.dim() || !(a.direction.norm() > 0.0) || !a.direction.allFinite()) {
      throw Error(Errc::InvalidMeasure, "direction of atom " + std::to_string(i) + " has wrong size or is zero");
    }
    a.direction = unit_vector(a.direction);
    if (!cone.in_dual_interior(a.direction)) {
      throw Error(Errc::OutsideDualInterior, "direction of atom " + std::to_string(i) + " is not in int Ω_{C°}");
    }
    margin_ = std::min(margin_, delta_C(cone, a.direction));
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms_.size(); ++j) {
      if (angle_between(atoms_[i].direction, atoms_[j].direction) <= kDistinctAngle) {
        throw Error(Errc::DuplicateDirection,
                    "atoms " + std::to_string(i) + " and " + std::to_string(j) + " have the same direction");
      }
    }
  }
}

std::vector<Vec> DirectionalMeasure::directions() const {
  std::vector<Vec> out;
  for (const Atom& a : atoms_) out.push_back(a.direction);
  return out;
}

std::vector<double> DirectionalMeasure::masses() const {
  std::vector<double> out;
  for (const Atom& a : atoms_) out.push_back(a.mass);
  return out;
}

double DirectionalMeasure::total_mass() const { return pairwise_sum(masses()); }

DirectionalMeasure DirectionalMeasure::scaled(double t) const {
  DirectionalMeasure m = *this;
  for (Atom& a : m.atoms_) a.mass *= t;
  return m;
}

SolverOptions SolverOptions::defaults_for(int dim) {
  SolverOptions o;
  o.tolerance = dim <= 2 ? 1e-8 : 1e-6;
  o.quadrature = QuadratureConfig::for_dim(dim);
  return o;
}

void SolverOptions::validate() const {
  if (!(tolerance > 0.0 && tolerance < 1.0)) throw Error(Errc::InvalidInput, "solver tolerance must lie in (0,1)");
  if (max_iterations < 1) throw Error(Errc::InvalidInput, "max iterations must be positive");
  if (!(armijo_slope > 0.0 && armijo_slope < 1.0)) throw Error(Errc::InvalidInput, "Armijo slope must lie in (0,1)");
  if (!(backtrack > 0.0 && backtrack < 1.0)) throw Error(Errc::InvalidInput, "backtrack factor must lie in (0,1)");
  if (!(restart_jitter > 0.0 && restart_jitter < 1.0)) throw Error(Errc::InvalidInput, "restart jitter must lie in (0,1)");
  if (max_restarts < 0) throw Error(Errc::InvalidInput, "max restarts must be non-negative");
  quadrature.validate();
}

double phi_functional(const std::vector<double>& h, const DirectionalMeasure& phi, const WeightFunction& w,
                      const QuadratureConfig& cfg) {
  w.require_solver_range();
  if (h.size() != phi.size()) throw Error(Errc::InvalidInput, "support vector and measure differ in length");
  const PseudoCone pc = tighten(PseudoCone(w.cone_ptr(), phi.directions(), h));
  const double v = covolume_euler(pc, w, cfg).value;
  std::vector<double> terms(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) terms[i] = h[i] * phi.atoms()[i].mass;
  return std::pow(v, -1.0 / (w.dim() - w.q())) * pairwise_sum(terms);
}

double lemma71_bound(const WeightFunction& w, const QuadratureConfig& cfg) {
  return std::pow(ball_covolume_density(w, cfg), -1.0 / (w.dim() - w.q()));
}

double check_lemma71(const PseudoCone& pc, const WeightFunction& w, double bound, const QuadratureConfig& cfg) {
  const PseudoCone t = pc.tightened() ? pc : tighten(pc);
  const double v = covolume_euler(t, w, cfg).value;
  const double hmax = *std::max_element(t.support_numbers().begin(), t.support_numbers().end());
  if (std::abs(v - 1.0) <= 1e-6 && hmax > bound) {
    throw Error(Errc::BoundViolation, "h̄ = " + std::to_string(hmax) + " exceeds the bound " + std::to_string(bound) +
                                          " at V_Θ = 1");
  }
  return hmax / bound;
}

namespace {

// Tightened body normalized to V_Θ = 1 together with the quantities of the
// ascent step.
struct State {
  PseudoCone pc;
  std::vector<double> s;
  double phi = 0.0;     // Φ
  double lambda = 0.0;  // Σ h̄ φ / (n-q)
  std::vector<double> grad;
  double residual = 0.0;
  bool all_active = true;
};

class Ascent {
 public:
  Ascent(const ConePtr& cone, const WeightFunction& w, const DirectionalMeasure& phi, const SolverOptions& opts)
      : cone_(cone), w_(w), dirs_(phi.directions()), mass_(phi.masses()), opts_(opts),
        nq_(w.dim() - w.q()), deg_(w.dim() - 1.0 - w.q()) {}

  State evaluate(const std::vector<double>& h) const {
    const PseudoCone raw = tighten(PseudoCone(cone_, dirs_, h));
    SurfaceMeasure sm = surface_measure(raw, w_, opts_.quadrature);
    const double v = covolume_euler(raw, w_, sm).value;
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(Errc::NotConverged, "covolume vanished during the iteration");
    const double t = std::pow(v, -1.0 / nq_);
    State st{raw.scaled(t), std::move(sm.masses), 0.0, 0.0, {}, 0.0, true};
    const double sf = std::pow(t, deg_);
    for (double& x : st.s) x *= sf;
    const auto& hb = st.pc.support_numbers();
    std::vector<double> terms(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) terms[i] = hb[i] * mass_[i];
    st.phi = pairwise_sum(terms);
    st.lambda = st.phi / nq_;
    st.grad.resize(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
      st.grad[i] = mass_[i] - st.lambda * st.s[i];
      st.residual = std::max(st.residual, std::abs(st.grad[i]) / mass_[i]);
      if (!(st.s[i] > 0.0)) st.all_active = false;
    }
    return st;
  }

  // Trial points far from the current iterate may leave the range where the
  // quadrature and vertex solves are reliable; such trials are rejected.
  std::optional<State> try_evaluate(const std::vector<double>& h) const {
    try {
      State st = evaluate(h);
      if (std::isfinite(st.phi)) return st;
    } catch (const Error&) {
    }
    return std::nullopt;
  }

  // Armijo backtracking along the gradient scaled by h_i / φ_i, which makes the
  // step independent of the overall scale of the normalized body.
  bool gradient_step(const State& cur, State& next, double& step) const {
    const auto& h = cur.pc.support_numbers();
    const std::size_t m = h.size();
    std::vector<double> d(m);
    double slope = 0.0;
    double cap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double r = cur.grad[i] / mass_[i];
      d[i] = h[i] * r;
      slope += cur.grad[i] * d[i];
      if (r < 0.0) cap = std::min(cap, 0.5 / -r);
    }
    if (!(slope > 0.0)) return false;
    double alpha = std::min(cap, 4.0 * step);
    std::vector<double> trial(m);
    for (int k = 0; k < 60 && alpha > 1e-16; ++k, alpha *= opts_.backtrack) {
      for (std::size_t i = 0; i < m; ++i) trial[i] = h[i] + alpha * d[i];
      std::optional<State> cand = try_evaluate(trial);
      if (!cand) continue;
      if (cand->phi >= cur.phi + opts_.armijo_slope * alpha * slope) {
        next = std::move(*cand);
        step = alpha;
        return true;
      }
    }
    return false;
  }

  // Damped Newton step on S(H) = φ for the rescaled body H = λ^{1/(n-1-q)} h.
  bool newton_step(const State& cur, State& next) const {
    const double t = std::pow(cur.lambda, 1.0 / deg_);
    const PseudoCone body = cur.pc.scaled(t);
    SurfaceMeasure sm;
    sm.masses = cur.s;
    for (double& x : sm.masses) x *= cur.lambda;
    Mat J = covolume_hessian(body, w_, sm, opts_.quadrature);
    const std::size_t m = mass_.size();
    Vec rhs(m);
    for (std::size_t i = 0; i < m; ++i) rhs(i) = mass_[i] - sm.masses[i];
    const double scale = J.diagonal().cwiseAbs().maxCoeff();
    const auto& H = body.support_numbers();
    std::vector<double> trial(m);
    for (double mu : {0.0, 1e-8, 1e-6, 1e-4, 1e-2, 1.0}) {
      Mat A = J;
      A.diagonal().array() += mu * scale;
      const Vec d = A.colPivHouseholderQr().solve(rhs);
      if (!d.allFinite()) continue;
      double shrink = 1.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (H[i] + d(i) < 0.5 * H[i]) shrink = std::min(shrink, 0.5 * H[i] / -d(i));
      }
      for (std::size_t i = 0; i < m; ++i) trial[i] = H[i] + shrink * d(i);
      std::optional<State> cand = try_evaluate(trial);
      if (!cand) continue;
      if (cand->residual < cur.residual && cand->phi >= cur.phi * (1.0 - kPhiNoise)) {
        next = std::move(*cand);
        return true;
      }
    }
    return false;
  }

  static constexpr double kPhiNoise = 1e-10;

 private:
  ConePtr cone_;
  const WeightFunction& w_;
  std::vector<Vec> dirs_;
  std::vector<double> mass_;
  SolverOptions opts_;
  double nq_;
  double deg_;
};

}  // namespace

SolveReport solve_minkowski(const ConePtr& cone, const WeightFunction& w, const DirectionalMeasure& phi,
                            const SolverOptions& opts) {
  opts.validate();
  w.require_solver_range();
  if (cone->dim() != 2 && cone->dim() != 3) {
    throw Error(Errc::UnsupportedDimension, "the solver supports n = 2, 3");
  }
  const double deg = w.dim() - 1.0 - w.q();
  const Ascent ascent(cone, w, phi, opts);
  const double bound = lemma71_bound(w, opts.quadrature);
  const double target = 0.1 * opts.tolerance;

  std::vector<double> h(phi.size(), 1.0);
  State best = ascent.evaluate(h);
  SolveReport rep{best.pc, 0.0, {}, {}, 0.0, {}};
  rep.lemma71_bound = bound;
  auto record = [&](const State& st) {
    rep.phi_trace.push_back(st.phi);
    const auto& hb = st.pc.support_numbers();
    const double ratio = *std::max_element(hb.begin(), hb.end()) / bound;
    rep.lemma71_max_ratio = std::max(rep.lemma71_max_ratio, ratio);
    if (ratio > 1.0) ++rep.lemma71_violations;
  };
  record(best);

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> jitter(-opts.restart_jitter, opts.restart_jitter);
  for (int attempt = 0; attempt <= opts.max_restarts && best.residual > target; ++attempt) {
    State cur = best;
    if (attempt > 0) {
      ++rep.restarts;
      std::vector<double> hj = best.pc.support_numbers();
      for (double& x : hj) x *= 1.0 + jitter(rng);
      cur = ascent.evaluate(hj);
      record(cur);
    }
    double step = 1.0;
    for (int it = 0; it < opts.max_iterations && cur.residual > target; ++it) {
      ++rep.iterations;
      State next = cur;
      bool moved = false;
      if (cur.all_active) moved = ascent.newton_step(cur, next);
      if (!moved) moved = ascent.gradient_step(cur, next, step);
      if (!moved) break;
      cur = std::move(next);
      record(cur);
      if (cur.residual < best.residual) best = cur;
    }
    if (cur.residual < best.residual) best = cur;
  }

  // Rescale the normalized maximizer and verify from scratch.
  rep.lambda = best.lambda;
  rep.normalized_radial = covolume_radial(best.pc, w, opts.quadrature).value;
  rep.solution = best.pc.scaled(std::pow(best.lambda, 1.0 / deg));
  const SurfaceMeasure sm = surface_measure(rep.solution, w, opts.quadrature);
  rep.surface = sm.masses;
  rep.covolume = covolume_euler(rep.solution, w, sm).value;
  rep.residuals.resize(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double m = phi.atoms()[i].mass;
    rep.residuals[i] = std::abs(sm.masses[i] - m) / m;
  }
  rep.max_residual = *std::max_element(rep.residuals.begin(), rep.residuals.end());
  rep.b_of_K = distance_from_origin(rep.solution);
  rep.converged = rep.max_residual <= opts.tolerance;
  return rep;
}

}  // namespace pcmk
