#include "hyproj/fermat_weber.hpp"

#include <cmath>
#include <stdexcept>

#include "hyproj/rng.hpp"

namespace hyproj {

namespace {

double pairwise_sum(const std::vector<double>& terms, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return terms[lo];
  if (hi - lo == 2) return terms[lo] + terms[lo + 1];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(terms, lo, mid) + pairwise_sum(terms, mid, hi);
}

// sigma d^{sigma-2} mu, the magnitude multiplying log_p q_i.
double log_coeff(double d, double sigma, double mu) {
  return mu * sigma * std::pow(d, sigma - 2.0);
}

}  // namespace

FermatWeberProblem make_fermat_weber(const ManifoldParams& m, std::vector<HPoint> anchors,
                                     Vec weights, double sigma) {
  if (anchors.empty()) throw std::invalid_argument("make_fermat_weber: no anchors");
  if (static_cast<Eigen::Index>(anchors.size()) != weights.size()) {
    throw std::invalid_argument("make_fermat_weber: weight count mismatch");
  }
  if (!(sigma >= 2.0)) throw std::invalid_argument("make_fermat_weber: sigma must be >= 2");
  if (weights.minCoeff() <= 0.0) {
    throw std::invalid_argument("make_fermat_weber: weights must be positive");
  }
  if (std::abs(weights.sum() - 1.0) > 1e-12) {
    throw std::invalid_argument("make_fermat_weber: weights must sum to one");
  }
  for (const HPoint& q : anchors) {
    if (!on_manifold(m, q.x)) {
      throw std::invalid_argument("make_fermat_weber: anchor off the manifold");
    }
  }
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    for (std::size_t j = i + 1; j < anchors.size(); ++j) {
      if (distance(m, anchors[i], anchors[j]) <= 1e-12) {
        throw std::invalid_argument("make_fermat_weber: anchors must be pairwise distinct");
      }
    }
  }
  return FermatWeberProblem{m, std::move(anchors), std::move(weights), sigma};
}

FermatWeberProblem make_fermat_weber(const ManifoldParams& m, std::vector<HPoint> anchors,
                                     double sigma) {
  const Eigen::Index n = static_cast<Eigen::Index>(anchors.size());
  return make_fermat_weber(m, std::move(anchors), Vec::Constant(n, 1.0 / n), sigma);
}

double fw_cost(const FermatWeberProblem& prob, const HPoint& p) {
  std::vector<double> terms(prob.anchors.size());
  for (std::size_t i = 0; i < prob.anchors.size(); ++i) {
    terms[i] = prob.weights[i] * std::pow(distance(prob.m, p, prob.anchors[i]), prob.sigma);
  }
  return pairwise_sum(terms, 0, terms.size());
}

HTangent fw_riem_gradient(const FermatWeberProblem& prob, const HPoint& p) {
  Vec g = Vec::Zero(prob.m.n + 1);
  for (std::size_t i = 0; i < prob.anchors.size(); ++i) {
    const double d = distance(prob.m, p, prob.anchors[i]);
    if (d <= kTolZero) continue;  // log_p q vanishes
    g -= log_coeff(d, prob.sigma, prob.weights[i]) * log_map(prob.m, p, prob.anchors[i]).v;
  }
  return HTangent{p, std::move(g)};
}

Vec fw_euclid_gradient(const FermatWeberProblem& prob, const HPoint& p) {
  const double sk = std::sqrt(prob.m.kappa);
  Vec g = Vec::Zero(prob.m.n + 1);
  for (std::size_t i = 0; i < prob.anchors.size(); ++i) {
    const double d = distance(prob.m, p, prob.anchors[i]);
    // d / |Proj_p q| = sqrt(kappa) d / sinh(sqrt(kappa) d), -> 1 as d -> 0
    const double ratio = sk * d < 1e-8 ? 1.0 : sk * d / std::sinh(sk * d);
    g -= log_coeff(d, prob.sigma, prob.weights[i]) * ratio * prob.anchors[i].x;
  }
  g[prob.m.n] = -g[prob.m.n];  // report J g so the tangent projection recovers grad
  return g;
}

Objective fw_objective(const FermatWeberProblem& prob, std::optional<double> lipschitz_L) {
  Objective o;
  o.cost = [prob](const HPoint& p) { return fw_cost(prob, p); };
  o.grad = [prob](const HPoint& p) { return fw_riem_gradient(prob, p); };
  o.lipschitz_L = lipschitz_L;
  return o;
}

double fw_lipschitz_bound(const FermatWeberProblem& prob, const HPoint& p0, double radius) {
  if (prob.sigma != 2.0) {
    throw std::invalid_argument("fw_lipschitz_bound: available for sigma = 2 only");
  }
  if (!(radius > 0.0)) throw std::invalid_argument("fw_lipschitz_bound: radius must be positive");
  double dmax = 0.0;
  for (const HPoint& q : prob.anchors) dmax = std::max(dmax, distance(prob.m, p0, q));
  const double sk = std::sqrt(prob.m.kappa);
  const double big_d = 2.0 * radius + dmax;
  return 2.0 * sk * big_d / std::tanh(sk * big_d);
}

std::vector<HPoint> generate_experiment_2d(std::uint64_t seed, int n_points, double noise,
                                           double offset) {
  if (n_points < 1) throw std::invalid_argument("generate_experiment_2d: n_points must be >= 1");
  const ManifoldParams m = make_manifold(2, 1.0);
  Vec apex(3);
  apex << 0.0, 0.0, 1.0;
  const HPoint p0{apex};
  NormalSampler rng(seed);
  std::vector<HPoint> pts;
  pts.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    Vec x(3);
    x << offset + noise * rng.normal(), offset + noise * rng.normal(), 0.0;
    pts.push_back(exp_map(m, p0, HTangent{p0, std::move(x)}));
  }
  return pts;
}

NdExperiment generate_experiment_nd(std::uint64_t seed, int d, int n_points) {
  if (d < 2) throw std::invalid_argument("generate_experiment_nd: d must be >= 2");
  if (n_points < 1) throw std::invalid_argument("generate_experiment_nd: n_points must be >= 1");
  NdExperiment ex;
  ex.m = make_manifold(d, 1.0);
  Vec apex = Vec::Zero(d + 1);
  apex[d] = 1.0;
  ex.p0 = HPoint{apex};
  ex.radius = 1.0 / std::sqrt(static_cast<double>(d));
  ex.noise = 3.0 / (2.0 * std::pow(static_cast<double>(d - 1), 0.25));
  ex.offset = 2.0 * ex.radius;
  NormalSampler rng(seed);
  ex.points.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    Vec x = Vec::Zero(d + 1);
    for (int j = 0; j < d; ++j) x[j] = ex.offset + ex.noise * rng.normal();
    ex.points.push_back(exp_map(ex.m, ex.p0, HTangent{ex.p0, std::move(x)}));
  }
  return ex;
}

}  // namespace hyproj
