#pragma once

#include <cstdint>
#include <vector>

#include "hyproj/convex_sets.hpp"
#include "hyproj/geometry.hpp"
#include "hyproj/solvers.hpp"

namespace hyproj {

// Weighted Fermat-Weber cost on H^n_kappa:
//   zeta(p) = sum_i mu_i d(p, q_i)^sigma,   sigma >= 2,
// with positive weights summing to one and pairwise distinct anchors. Strictly
// geodesically convex, so the constrained minimizer over a hyperbolically convex
// set is unique.
struct FermatWeberProblem {
  ManifoldParams m;
  std::vector<HPoint> anchors;
  Vec weights;
  double sigma = 2.0;
};

FermatWeberProblem make_fermat_weber(const ManifoldParams& m, std::vector<HPoint> anchors,
                                     Vec weights, double sigma);

// Uniform weights 1/N.
FermatWeberProblem make_fermat_weber(const ManifoldParams& m, std::vector<HPoint> anchors,
                                     double sigma = 2.0);

// Fixed-order pairwise summation keeps results reproducible across runs.
double fw_cost(const FermatWeberProblem& prob, const HPoint& p);

// grad zeta(p) = -sum_i mu_i sigma d(p,q_i)^{sigma-2} log_p q_i.
HTangent fw_riem_gradient(const FermatWeberProblem& prob, const HPoint& p);

// Ambient vector whose tangent projection reproduces the Riemannian gradient;
// used by the finite-difference checks.
Vec fw_euclid_gradient(const FermatWeberProblem& prob, const HPoint& p);

// Objective adapter. lipschitz_L is attached when provided.
Objective fw_objective(const FermatWeberProblem& prob,
                       std::optional<double> lipschitz_L = std::nullopt);

// Conservative gradient-Lipschitz bound for sigma = 2 over the ball of the given
// radius around p0: L = 2 sqrt(kappa) D coth(sqrt(kappa) D) with
// D = 2 radius + max_i d(p0, q_i).
double fw_lipschitz_bound(const FermatWeberProblem& prob, const HPoint& p0, double radius);

// Data generator matching the planar experiment: anchors exp_{p0}(X_i) on H^2_1
// with p0 = (0,0,1), X_i = (offset + noise x_1, offset + noise x_2, 0) and
// x_j standard normal draws from NormalSampler(seed).
std::vector<HPoint> generate_experiment_2d(std::uint64_t seed, int n_points, double noise,
                                           double offset);

struct NdExperiment {
  ManifoldParams m;
  HPoint p0;
  double radius = 0.0;  // 1/sqrt(d)
  double noise = 0.0;   // 3 / (2 (d-1)^{1/4})
  double offset = 0.0;  // 2 radius
  std::vector<HPoint> points;
};

// Dimension-scaled variant; d = 2 reduces to the planar generator with the
// substituted radius/noise/offset schedule.
NdExperiment generate_experiment_nd(std::uint64_t seed, int d, int n_points);

}  // namespace hyproj
