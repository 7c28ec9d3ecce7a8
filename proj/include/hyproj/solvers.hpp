#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hyproj/convex_sets.hpp"
#include "hyproj/geometry.hpp"

namespace hyproj {

// Objective on the manifold. The gradient callback returns the Riemannian gradient;
// from_euclidean adapts an ambient-gradient function through the tangent projection.
struct Objective {
  std::function<double(const HPoint&)> cost;
  std::function<HTangent(const HPoint&)> grad;
  std::optional<double> lipschitz_L;  // bound for the gradient field, when known

  static Objective from_euclidean(const ManifoldParams& m,
                                  std::function<double(const HPoint&)> cost,
                                  std::function<Vec(const HPoint&)> euclid_grad,
                                  std::optional<double> lipschitz_L = std::nullopt);
};

enum class StopReason { GradientZero, StationarityTol, MaxIters };

struct IterRecord {
  int k = 0;
  double cost = 0.0;
  double alpha = 0.0;         // trial step used to form z_k
  double stationarity = 0.0;  // d(p_k, z_k)
  double dir_deriv = 0.0;     // <grad f(p_k), log_{p_k} z_k>
  double step = 0.0;          // accepted geodesic fraction tau_k (1 for constant step)
  int ls_trials = 0;          // backtracking halvings l_k
  double theta = 0.0;         // theta_k entering the line search
};

struct SolverTrace {
  std::vector<IterRecord> iters;
  StopReason reason = StopReason::MaxIters;
  int dropped = 0;  // records discarded by the ring buffer, oldest first
};

struct SolverResult {
  HPoint point;
  SolverTrace trace;
};

// Thrown when cost or gradient turn non-finite; carries the partial trace.
struct SolverNumericError : std::runtime_error {
  SolverNumericError(const std::string& what, SolverTrace t)
      : std::runtime_error(what), trace(std::move(t)) {}
  SolverTrace trace;
};

// Thrown when the Armijo search exhausts its trial budget.
struct LineSearchError : std::runtime_error {
  LineSearchError(const std::string& what, SolverTrace t)
      : std::runtime_error(what), trace(std::move(t)) {}
  SolverTrace trace;
};

struct ConstantStepConfig {
  double alpha = 0.0;
  int max_iters = 1000;
  double stop_tol = 1e-7;
  // The step rule requires 0 < alpha < 1/L. Without a Lipschitz bound on the
  // objective the check is impossible; set this to run anyway.
  bool allow_unchecked_alpha = false;
  std::size_t trace_capacity = 0;  // 0 keeps the full trace
};

struct BacktrackConfig {
  // Mild contraction: the first trial beta theta0 is most of the segment, so
  // unobstructed iterations move nearly all the way to z_k.
  double rho = 0.1;    // sufficient-decrease fraction, in (0,1)
  double beta = 0.9;   // contraction factor, in (0,1)
  double theta0 = 0.999;  // initial trial fraction, in (0,1)
  double alpha_lo = 1.0;
  double alpha_hi = 1.0;
  // Free step-size sequence alpha_k in [alpha_lo, alpha_hi]; default is the
  // constant alpha_hi.
  std::function<double(int)> alpha_rule;
  int max_iters = 1000;
  double stop_tol = 1e-7;
  int max_ls_trials = 60;
  std::size_t trace_capacity = 0;
};

// Projected gradient with constant step: p_{k+1} = P_C(exp_{p_k}(-alpha grad f(p_k))).
// Stops when the gradient vanishes (|grad| <= 1e-14), when d(p_k, p_{k+1}) <= stop_tol,
// or at max_iters. Requires p0 in C.
SolverResult pga_constant(const Objective& f, const ConvexSetSpec& set, const HPoint& p0,
                          const ConstantStepConfig& cfg);

// Projected gradient with Armijo backtracking along the geodesic toward
// z_k = P_C(exp_{p_k}(-alpha_k grad f(p_k))): accepts the first l >= 1 with
//   f(exp_{p_k}(beta^l theta_k log_{p_k} z_k)) <= f(p_k) + rho beta^l theta_k
//                                                 <grad f(p_k), log_{p_k} z_k>,
// then theta_{k+1} = beta^{l-1} theta_k <= theta_k. Trial fractions never reach 1,
// so iterates stay inside C. Stops on d(p_k, z_k) <= stop_tol before stepping.
SolverResult pga_backtracking(const Objective& f, const ConvexSetSpec& set, const HPoint& p0,
                              const BacktrackConfig& cfg);

// d(p, P_C(exp_p(-alpha grad f(p)))); zero exactly at stationary points.
double stationarity_measure(const Objective& f, const ConvexSetSpec& set, const HPoint& p,
                            double alpha);

}  // namespace hyproj
