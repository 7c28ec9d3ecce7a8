#pragma once

#include <Eigen/Core>

namespace hyproj {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Shared numerical policy.
inline constexpr double kTolManifold = 1e-9;   // relative membership tolerance
inline constexpr double kTolZero = 1e-14;      // norms/distances treated as exact zero
inline constexpr double kMaxExpArg = 350.0;    // cosh/sinh overflow guard, leaves headroom for squaring

// Model of the n-dimensional hyperbolic space of curvature -kappa, realized as the
// upper sheet of the hyperboloid <x,x> = -1/kappa in R^{n+1} with the Lorentzian
// bilinear form <x,y> = sum_{i<=n} x_i y_i - x_{n+1} y_{n+1}.
struct ManifoldParams {
  int n;
  double kappa;
};

ManifoldParams make_manifold(int n, double kappa);

// Point on the upper sheet: <x,x> = -1/kappa, x_{n+1} > 0.
struct HPoint {
  Vec x;
};

// Tangent vector at base: <base.x, v> = 0.
struct HTangent {
  HPoint base;
  Vec v;
};

double lorentz_inner(const Vec& x, const Vec& y);

bool on_manifold(const ManifoldParams& m, const Vec& x, double tol = kTolManifold);

// Validating constructors. Library operations return already-consistent objects;
// use these at API boundaries and in tests.
HPoint make_hpoint(const ManifoldParams& m, Vec x);
HTangent make_htangent(const ManifoldParams& m, HPoint base, Vec v);

// x / sqrt(-kappa <x,x>). Requires <x,x> < 0 and x_{n+1} > 0.
HPoint renormalize(const ManifoldParams& m, Vec x);

// Geodesic distance (1/sqrt(kappa)) arcosh(-kappa <p,q>), evaluated through the
// Lorentz norm of p - q so nearby points do not lose half the significand to the
// arcosh; negative round-off in the norm is clamped to zero.
double distance(const ManifoldParams& m, const HPoint& p, const HPoint& q);

// Orthogonal projection x + kappa <p,x> p onto the tangent space at p.
// Idempotent and self-adjoint with respect to the Lorentzian form.
HTangent tangent_project(const ManifoldParams& m, const HPoint& p, const Vec& x);

// sqrt(<v,v>); the form is positive definite on tangent spaces.
double tangent_norm(const ManifoldParams& m, const HTangent& v);

// exp_p(v) = cosh(sqrt(kappa)|v|) p + sinh(sqrt(kappa)|v|) v / (sqrt(kappa)|v|).
// |v| <= kTolZero returns p. Throws std::range_error when sqrt(kappa)|v| > kMaxExpArg.
HPoint exp_map(const ManifoldParams& m, const HPoint& p, const HTangent& v);

// Inverse of exp_p: log_p q = d(p,q) Proj_p(q) / |Proj_p(q)|, zero vector for q = p.
HTangent log_map(const ManifoldParams& m, const HPoint& p, const HPoint& q);

// Arclength parameterization of the geodesic from p to q, t in [0, d(p,q)].
// Throws std::invalid_argument when p = q or t is out of range.
HPoint geodesic_segment(const ManifoldParams& m, const HPoint& p, const HPoint& q, double t);

// Parallel transport along the geodesic from p to q:
//   v - kappa <q,v> / (kappa <p,q> - 1) (p + q).
// Isometry from T_p to T_q; identity for p = q.
HTangent parallel_transport(const ManifoldParams& m, const HPoint& p, const HPoint& q,
                            const HTangent& v);

// Riemannian gradient from the ambient Euclidean gradient f'(p):
//   grad f(p) = J f'(p) + kappa <J f'(p), p> p,   J = diag(1,...,1,-1).
HTangent riemannian_gradient(const ManifoldParams& m, const HPoint& p, const Vec& euclid_grad);

// Stereographic chart onto the open ball of radius 1/sqrt(kappa):
//   y_i = x_i / (sqrt(kappa) x_{n+1} + 1).
Vec to_poincare(const ManifoldParams& m, const HPoint& p);

// Inverse chart; requires |y| < 1/sqrt(kappa).
HPoint from_poincare(const ManifoldParams& m, const Vec& y);

}  // namespace hyproj
