#pragma once

#include <stdexcept>
#include <vector>

#include "hyproj/cones.hpp"
#include "hyproj/geometry.hpp"

namespace hyproj {

// The Lorentz projection of x onto a closed convex cone K is the set
//   { y in K : <x - y, z - y> <= 0 for all z in K }
// with respect to the Lorentzian form; equivalently y in K with <x-y, z> <= 0 on K
// and <x-y, y> = 0. Unlike the Euclidean case it can be multivalued, but for the
// cone spanned by a hyperbolically convex cap and x in the interior of the Lorentz
// cone it consists of exactly {0, u} with a single nonzero u.

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LProjResult {
  Vec nonzero;                     // the nonzero element of the Lorentz projection
  double root = 0.0;               // height u_{n+1} solving the scalar equation
  double complementarity = 0.0;    // <p - u, u>
  double max_feasibility = 0.0;    // max over samples of <p - u, z>
};

// Certifies the variational characterization against a finite sample of cone points.
// Complementarity is tested relative to |p|^2, feasibility against each given z.
bool is_l_projection(const Vec& p, const Vec& u, const std::vector<Vec>& samples,
                     double tol = 1e-8);

// Worst violation of the certificate above; <= 0 means it passes exactly.
double l_projection_violation(const Vec& p, const Vec& u, const std::vector<Vec>& samples);

// Nonzero element for a hyperplane V = { x : a^T x = 0 } with <a,a> != 0:
//   y - (<y, Ja> / <a,a>) Ja.
Vec l_project_hyperplane(const Vec& a, const Vec& y);

// Nonzero element for the half-space cone V_+ intersect int L, for p in int L:
// returns p itself when a^T p >= 0, otherwise p - (<a,Jp>/<a,a>) Ja.
Vec l_project_halfspace_cone(const Vec& a, const Vec& p);

struct LProjOptions {
  double t_min = 1e-12;        // lower end of the root bracket
  double t_max_factor = 20.0;  // bracket upper end as a multiple of p_{n+1}
  int grid = 64;               // geometric scan resolution for the sign change
  int bisect_iters = 60;
  double closure_tol = 1e-13;  // tolerance handed to project_spanned_closure
  int samples = 256;           // cone points used to rank candidate roots
};

// Solves the scalar natural equation
//   t = e_{n+1}^T Pi_clo(K)(J p + 2 t e_{n+1})
// for a nonzero root by a geometric bracket scan plus bisection, then recovers
// u = Pi_clo(K)(J p + 2 t e_{n+1}). The cone argument is interpreted as the cone
// spanned by its hyperbolic cap, so the projection runs onto cone intersect L.
// t = 0 always solves the equation and is excluded. Throws ConvergenceError when
// no admissible root is found after widening the bracket.
LProjResult l_project_natural(const ConeSpec& cone, const Vec& p,
                              const LProjOptions& opts = {});

}  // namespace hyproj
