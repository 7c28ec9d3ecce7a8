#include "hyproj/solvers.hpp"

#include <cmath>

namespace hyproj {

namespace {

constexpr double kGradZeroTol = 1e-14;

void push_record(SolverTrace& trace, std::size_t capacity, IterRecord rec) {
  if (capacity > 0 && trace.iters.size() >= capacity) {
    trace.iters.erase(trace.iters.begin());
    ++trace.dropped;
  }
  trace.iters.push_back(rec);
}

void check_finite(double cost, const HTangent& g, SolverTrace& trace) {
  if (!std::isfinite(cost) || !g.v.allFinite()) {
    throw SolverNumericError("solver: non-finite cost or gradient", trace);
  }
}

}  // namespace

Objective Objective::from_euclidean(const ManifoldParams& m,
                                    std::function<double(const HPoint&)> cost,
                                    std::function<Vec(const HPoint&)> euclid_grad,
                                    std::optional<double> lipschitz_L) {
  Objective o;
  o.cost = std::move(cost);
  o.grad = [m, eg = std::move(euclid_grad)](const HPoint& p) {
    return riemannian_gradient(m, p, eg(p));
  };
  o.lipschitz_L = lipschitz_L;
  return o;
}

SolverResult pga_constant(const Objective& f, const ConvexSetSpec& set, const HPoint& p0,
                          const ConstantStepConfig& cfg) {
  const ManifoldParams& m = set.manifold();
  if (!contains(set, p0, 1e-8)) throw std::invalid_argument("pga_constant: p0 is not in C");
  if (!(cfg.alpha > 0.0)) throw std::invalid_argument("pga_constant: alpha must be positive");
  if (f.lipschitz_L) {
    if (!(cfg.alpha < 1.0 / *f.lipschitz_L)) {
      throw std::invalid_argument("pga_constant: alpha must be below 1/L");
    }
  } else if (!cfg.allow_unchecked_alpha) {
    throw std::invalid_argument(
        "pga_constant: no Lipschitz bound supplied; set allow_unchecked_alpha to proceed");
  }

  SolverTrace trace;
  HPoint p = p0;
  for (int k = 0; k < cfg.max_iters; ++k) {
    const double cost = f.cost(p);
    const HTangent g = f.grad(p);
    check_finite(cost, g, trace);

    IterRecord rec;
    rec.k = k;
    rec.cost = cost;
    rec.alpha = cfg.alpha;
    rec.step = 1.0;

    if (tangent_norm(m, g) <= kGradZeroTol) {
      rec.stationarity = 0.0;
      push_record(trace, cfg.trace_capacity, rec);
      trace.reason = StopReason::GradientZero;
      return {p, trace};
    }

    HTangent step = g;
    step.v *= -cfg.alpha;
    const HPoint z = project(set, exp_map(m, p, step));
    rec.stationarity = distance(m, p, z);
    rec.dir_deriv = lorentz_inner(g.v, log_map(m, p, z).v);
    push_record(trace, cfg.trace_capacity, rec);

    p = z;
    if (rec.stationarity <= cfg.stop_tol) {
      trace.reason = StopReason::StationarityTol;
      return {p, trace};
    }
  }
  trace.reason = StopReason::MaxIters;
  return {p, trace};
}

SolverResult pga_backtracking(const Objective& f, const ConvexSetSpec& set, const HPoint& p0,
                              const BacktrackConfig& cfg) {
  const ManifoldParams& m = set.manifold();
  if (!contains(set, p0, 1e-8)) throw std::invalid_argument("pga_backtracking: p0 is not in C");
  auto in01 = [](double v) { return v > 0.0 && v < 1.0; };
  if (!in01(cfg.rho) || !in01(cfg.beta) || !in01(cfg.theta0)) {
    throw std::invalid_argument("pga_backtracking: rho, beta, theta0 must lie in (0,1)");
  }
  if (!(cfg.alpha_lo > 0.0) || !(cfg.alpha_lo <= cfg.alpha_hi)) {
    throw std::invalid_argument("pga_backtracking: need 0 < alpha_lo <= alpha_hi");
  }

  SolverTrace trace;
  HPoint p = p0;
  double theta = cfg.theta0;
  for (int k = 0; k < cfg.max_iters; ++k) {
    const double cost = f.cost(p);
    const HTangent g = f.grad(p);
    check_finite(cost, g, trace);

    IterRecord rec;
    rec.k = k;
    rec.cost = cost;
    rec.theta = theta;

    if (tangent_norm(m, g) <= kGradZeroTol) {
      push_record(trace, cfg.trace_capacity, rec);
      trace.reason = StopReason::GradientZero;
      return {p, trace};
    }

    double alpha = cfg.alpha_rule ? cfg.alpha_rule(k) : cfg.alpha_hi;
    if (!(alpha >= cfg.alpha_lo && alpha <= cfg.alpha_hi)) {
      throw std::invalid_argument("pga_backtracking: alpha_rule left [alpha_lo, alpha_hi]");
    }
    rec.alpha = alpha;

    HTangent step = g;
    step.v *= -alpha;
    const HPoint z = project(set, exp_map(m, p, step));
    rec.stationarity = distance(m, p, z);

    if (rec.stationarity <= cfg.stop_tol) {
      push_record(trace, cfg.trace_capacity, rec);
      trace.reason = StopReason::StationarityTol;
      return {p, trace};
    }

    const HTangent dir = log_map(m, p, z);
    const double dd = lorentz_inner(g.v, dir.v);
    rec.dir_deriv = dd;

    // The trial index starts at 1: fractions beta^l theta stay below 1, every
    // candidate lies strictly between p and z, and theta never increases. This
    // is what keeps the iterates inside C and theta inside (0,1).
    int l = 1;
    HPoint cand = p;
    for (; l <= cfg.max_ls_trials; ++l) {
      const double tau = std::pow(cfg.beta, l) * theta;
      HTangent scaled = dir;
      scaled.v *= tau;
      cand = exp_map(m, p, scaled);
      const double fc = f.cost(cand);
      if (!std::isfinite(fc)) {
        push_record(trace, cfg.trace_capacity, rec);
        throw SolverNumericError("pga_backtracking: non-finite trial cost", trace);
      }
      if (fc <= cost + cfg.rho * tau * dd) break;
    }
    if (l > cfg.max_ls_trials) {
      push_record(trace, cfg.trace_capacity, rec);
      throw LineSearchError("pga_backtracking: Armijo search exhausted its budget", trace);
    }

    rec.ls_trials = l;
    rec.step = std::pow(cfg.beta, l) * theta;
    push_record(trace, cfg.trace_capacity, rec);

    p = cand;
    theta = std::pow(cfg.beta, l - 1) * theta;
  }
  trace.reason = StopReason::MaxIters;
  return {p, trace};
}

double stationarity_measure(const Objective& f, const ConvexSetSpec& set, const HPoint& p,
                            double alpha) {
  const ManifoldParams& m = set.manifold();
  HTangent g = f.grad(p);
  g.v *= -alpha;
  return distance(m, p, project(set, exp_map(m, p, g)));
}

}  // namespace hyproj
