#pragma once

#include <vector>

#include "hyproj/geometry.hpp"

namespace hyproj {

// Convex cones in R^{dim} used as constraint-set generators. Kinds:
//   NonnegOrthant   componentwise x >= 0
//   Circular        L_alpha = { x : x_dim >= alpha |x_bar| }, alpha >= 1 (alpha = 1 is the
//                   Lorentz cone)
//   Simplicial      cone{v^1, ..., v^m} with linearly independent generators (columns)
//   HalfSpaceCone   V_+ intersected with the Lorentz cone, V_+ = { x : a^T x >= 0 };
//                   requires <a,a> != 0 so the hyperplane is non-degenerate
class ConeSpec {
 public:
  enum class Kind { NonnegOrthant, Circular, Simplicial, HalfSpaceCone };

  static ConeSpec nonneg_orthant(int dim);
  static ConeSpec circular(int dim, double alpha);
  static ConeSpec simplicial(Mat generators);
  static ConeSpec halfspace_cone(Vec normal);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  const Mat& generators() const { return generators_; }
  const Vec& normal() const { return normal_; }

  // Membership in the closed cone this spec denotes, with absolute slack tol.
  bool contains(const Vec& x, double tol = 1e-12) const;

 private:
  ConeSpec() = default;
  Kind kind_ = Kind::NonnegOrthant;
  int dim_ = 0;
  double alpha_ = 0.0;
  Mat generators_;
  Vec normal_;
};

// Euclidean projection onto the closed cone. Closed forms for the orthant and
// circular kinds, active-set least squares for simplicial, and a case analysis
// backed by an exact secular-equation solve for the half-space kind.
Vec euclid_project(const ConeSpec& cone, const Vec& x);

// Projection onto the closure of the cone spanned by the hyperbolically convex cap,
// i.e. onto (cone) intersect (Lorentz cone). Coincides with euclid_project for the
// Circular and HalfSpaceCone kinds; for the polyhedral kinds the intersection is
// computed by Dykstra's alternating scheme.
Vec project_spanned_closure(const ConeSpec& cone, const Vec& x, double tol = 1e-13);

// Grid oracle for dim <= 3: scans cone directions at the given angular resolution,
// projects x onto each admissible ray, and returns the best candidate. Used to
// validate the closed forms; accuracy is O(|x| * pitch) with pitch = pi/resolution.
Vec brute_force_cone_argmin(const ConeSpec& cone, const Vec& x, int resolution);

// Deterministic sample of points of the closed cone (unit Euclidean norm).
// With intersect_lorentz, samples the spanned closure (cone intersect L) instead;
// that variant requires dim >= 2 and is what the Lorentzian certificates use.
std::vector<Vec> sample_cone_points(const ConeSpec& cone, int count,
                                    bool intersect_lorentz = false);

namespace detail {

// Lawson-Hanson nonnegative least squares: argmin_{l >= 0} |A l - b|.
Vec nnls(const Mat& A, const Vec& b);

// Exhaustive face enumeration for simplicial projection, practical for <= 16 generators.
Vec simplicial_project_faces(const Mat& V, const Vec& x);
Vec simplicial_project_nnls(const Mat& V, const Vec& x);

// Coefficients of the simplicial representation x = V l recovered by least squares.
Vec simplicial_coefficients(const Mat& V, const Vec& x);

}  // namespace detail

}  // namespace hyproj
