#pragma once

#include <vector>

#include "hyproj/cones.hpp"
#include "hyproj/geometry.hpp"
#include "hyproj/lorentz_projection.hpp"

namespace hyproj {

// Closed hyperbolically convex subsets of H^n_kappa with computable metric
// projections. Cap kinds are sections (cone intersect hyperboloid) of the cones
// from ConeSpec; Ball is the closed geodesic ball.
class ConvexSetSpec {
 public:
  enum class Kind { Ball, OrthantCap, SimplicialCap, CircularCap, HalfSpaceCap };

  static ConvexSetSpec ball(const ManifoldParams& m, HPoint center, double radius);
  static ConvexSetSpec orthant_cap(const ManifoldParams& m);
  // Horizontal generators v^1..v^k (k <= n, each with last coordinate zero, linearly
  // independent); the vertical generator e_{n+1} is appended automatically.
  static ConvexSetSpec simplicial_cap(const ManifoldParams& m, const Mat& horizontal_generators);
  static ConvexSetSpec circular_cap(const ManifoldParams& m, double alpha);  // alpha > 1
  // Half-space a^T x >= 0; the normal must be spacelike (<a,a> > 0), otherwise the
  // section is empty or the whole manifold.
  static ConvexSetSpec halfspace_cap(const ManifoldParams& m, Vec normal);

  Kind kind() const { return kind_; }
  const ManifoldParams& manifold() const { return m_; }
  const HPoint& center() const { return center_; }
  double radius() const { return radius_; }
  double alpha() const { return alpha_; }
  const Mat& generators() const { return generators_; }
  const Vec& normal() const { return normal_; }

 private:
  ConvexSetSpec() : center_{Vec()} {}
  Kind kind_ = Kind::Ball;
  ManifoldParams m_{1, 1.0};
  HPoint center_;
  double radius_ = 0.0;
  double alpha_ = 0.0;
  Mat generators_;  // full generator matrix including e_{n+1} for SimplicialCap
  Vec normal_;
};

// The ambient cone whose section the cap is. Throws for Ball.
ConeSpec spanned_cone(const ConvexSetSpec& set);

bool contains(const ConvexSetSpec& set, const HPoint& p, double tol = 1e-10);

// u / sqrt(-kappa <u,u>); requires a timelike u with positive last coordinate.
HPoint normalize_to_hyperboloid(const ManifoldParams& m, const Vec& u);

// Metric projection argmin_{q in set} d(p, q). Closed forms per kind:
//   Ball          geodesic from the center toward p, stopped at the radius
//   OrthantCap    componentwise positive part, renormalized
//   SimplicialCap Euclidean cone projection, renormalized
//   CircularCap   Euclidean projection onto L_alpha, renormalized
//   HalfSpaceCap  reflection-free hyperplane formula, already on the sheet
HPoint project(const ConvexSetSpec& set, const HPoint& p);

struct CertifyReport {
  double max_violation = 0.0;  // max over sampled q of <log_c p, log_c q>
  bool certified = false;
};

// Finite-sample check of the variational inequality characterizing the projection.
CertifyReport certify_projection(const ConvexSetSpec& set, const HPoint& p,
                                 const HPoint& candidate, int samples, double tol = 1e-8);

// Deterministic points of the set, used by the certificate and tests.
std::vector<HPoint> sample_set_points(const ConvexSetSpec& set, int count);

// Dense-grid oracle for n = 2: parameterizes the set by the unit-disk section of
// the spanned cone (geodesic polar coordinates for Ball), and returns the sample
// maximizing <p, q>. Resolution is the per-axis grid count.
HPoint brute_force_intrinsic(const ConvexSetSpec& set, const HPoint& p, int resolution);

// Local grid pitch around q: max hyperbolic distance from q to its neighboring
// grid samples, defining the oracle's accuracy radius.
double brute_force_pitch(const ConvexSetSpec& set, const HPoint& q, int resolution);

struct LorentzCrossCheck {
  HPoint point;             // normalized nonzero Lorentz projection
  LProjResult lproj;        // underlying natural-equation solution
  double converse_residual; // certificate violation of -kappa<p,v>v for v = project(set,p)
};

// Computes the intrinsic projection through the Lorentz-projection route and
// checks the converse direction. Cap kinds only.
LorentzCrossCheck cross_check_via_lorentz(const ConvexSetSpec& set, const HPoint& p);

}  // namespace hyproj
