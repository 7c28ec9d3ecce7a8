#include "hyproj/cones.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hyproj/rng.hpp"

namespace hyproj {

namespace {

double scale_of(const Vec& x) { return std::max(1.0, x.norm()); }

// Projection onto L_alpha = { (xb, t) : t >= alpha |xb| }.
Vec circular_project(const Vec& x, double alpha) {
  const Eigen::Index n = x.size() - 1;
  const double r = x.head(n).norm();
  const double t = x[n];
  if (t >= alpha * r) return x;
  if (alpha * t <= -r) return Vec::Zero(x.size());
  // boundary branch: nearest point on t = alpha |xb|, r > 0 here
  const double lam = (r + alpha * t) / (1.0 + alpha * alpha);
  Vec y(x.size());
  y.head(n) = (lam / r) * x.head(n);
  y[n] = alpha * lam;
  return y;
}

Vec lorentz_project(const Vec& x) { return circular_project(x, 1.0); }

bool in_lorentz(const Vec& x, double tol) {
  const Eigen::Index n = x.size() - 1;
  return x[n] >= x.head(n).norm() - tol;
}

// Orthonormal basis of the hyperplane a^T x = 0 (columns).
Mat hyperplane_basis(const Vec& a) {
  const Eigen::Index n1 = a.size();
  Eigen::HouseholderQR<Mat> qr(a);
  Mat Q = qr.householderQ() * Mat::Identity(n1, n1);
  return Q.rightCols(n1 - 1);
}

// Nearest point to x on (mantle of L) intersect (a^T y = 0). In hyperplane
// coordinates w (y = B w, c = B^T x) the Lorentz form restricts to
// Q = I - 2 b b^T with b = B^T e_last, so the slice { w^T Q w = 0, y_last >= 0 }
// is the upper nappe |u| = gamma t of a circular cone around b-hat
// (t = b-hat component of w, u the rest, gamma^2 = 2|b|^2 - 1). Radial
// symmetry collapses the nappe to one ray in the (|u|, t) half-plane, and
// ray projection is closed form.
bool boundary_slice_candidate(const Vec& a, const Vec& x, Vec* out) {
  const Eigen::Index n1 = x.size();
  const Mat B = hyperplane_basis(a);
  const Vec c = B.transpose() * x;
  const Vec b = B.row(n1 - 1).transpose();
  const double nb2 = b.squaredNorm();
  const double g2 = 2.0 * nb2 - 1.0;
  if (g2 < 0.0) return false;  // slice is the origin alone; caller keeps that fallback
  const double gamma = std::sqrt(g2);

  const Vec bh = b / std::sqrt(nb2);
  const double ct = bh.dot(c);
  const Vec cu = c - ct * bh;
  const double ncu = cu.norm();

  Vec ray = bh;  // ncu == 0: any azimuth gives the same distance
  if (ncu > 0.0) ray += gamma * (cu / ncu);
  const double tau = std::max(c.dot(ray), 0.0) / ray.squaredNorm();
  *out = B * (tau * ray);
  return true;
}

// Euclidean projection onto V_+ intersect L via case analysis.
Vec halfspace_project(const Vec& a, const Vec& x) {
  const double tol = 1e-13 * scale_of(x);
  const double s = a.dot(x);
  if (s >= -tol && in_lorentz(x, tol)) return x;

  Vec yl = lorentz_project(x);
  if (a.dot(yl) >= 0.0) return yl;

  Vec yv = s < 0.0 ? Vec(x - (s / a.squaredNorm()) * a) : x;
  if (in_lorentz(yv, tol)) return yv;

  // both constraints active: nearest point lies in L intersect the hyperplane
  Vec xv = x - (s / a.squaredNorm()) * a;
  Vec best = Vec::Zero(x.size());
  double best_d = x.norm();
  if (in_lorentz(xv, tol) && (x - xv).norm() < best_d) {
    best = xv;
    best_d = (x - xv).norm();
  }
  Vec cand;
  if (boundary_slice_candidate(a, x, &cand)) {
    const double d = (x - cand).norm();
    if (d < best_d) {
      best = cand;
      best_d = d;
    }
  }
  return best;
}

// Dykstra's alternating projections onto A intersect B.
template <typename PA, typename PB>
Vec dykstra(const Vec& x0, PA project_a, PB project_b, double tol, int max_iter) {
  const double eps = tol * scale_of(x0);
  Vec x = x0;
  Vec p = Vec::Zero(x0.size());
  Vec q = Vec::Zero(x0.size());
  for (int it = 0; it < max_iter; ++it) {
    Vec y = project_a(x + p);
    p = x + p - y;
    Vec xn = project_b(y + q);
    q = y + q - xn;
    const double gap = (xn - y).norm() + (xn - x).norm();
    x = xn;
    if (gap <= eps) break;
  }
  return x;
}

}  // namespace

namespace detail {

Vec nnls(const Mat& A, const Vec& b) {
  const Eigen::Index m = A.cols();
  std::vector<bool> passive(m, false);
  Vec x = Vec::Zero(m);
  Vec w = A.transpose() * b;
  const double tol = 1e-12 * std::max(1.0, b.norm()) * std::max(1.0, A.norm());

  auto solve_passive = [&](const std::vector<bool>& act) {
    int k = 0;
    for (Eigen::Index i = 0; i < m; ++i) k += act[i] ? 1 : 0;
    Mat Ap(A.rows(), k);
    int c = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (act[i]) Ap.col(c++) = A.col(i);
    }
    Vec zp = Ap.colPivHouseholderQr().solve(b);
    Vec z = Vec::Zero(m);
    c = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (act[i]) z[i] = zp[c++];
    }
    return z;
  };

  for (int outer = 0; outer < 10 * static_cast<int>(m) + 10; ++outer) {
    int jbest = -1;
    double wbest = tol;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (!passive[j] && w[j] > wbest) {
        wbest = w[j];
        jbest = static_cast<int>(j);
      }
    }
    if (jbest < 0) break;
    passive[jbest] = true;

    for (int inner = 0; inner < 10 * static_cast<int>(m) + 10; ++inner) {
      Vec z = solve_passive(passive);
      bool ok = true;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (passive[i] && z[i] <= 0.0) ok = false;
      }
      if (ok) {
        x = z;
        break;
      }
      double step = 1.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (passive[i] && z[i] <= 0.0) {
          step = std::min(step, x[i] / (x[i] - z[i]));
        }
      }
      x = x + step * (z - x);
      for (Eigen::Index i = 0; i < m; ++i) {
        if (passive[i] && x[i] <= tol) {
          passive[i] = false;
          x[i] = 0.0;
        }
      }
    }
    w = A.transpose() * (b - A * x);
  }
  return x;
}

Vec simplicial_project_faces(const Mat& V, const Vec& x) {
  const int m = static_cast<int>(V.cols());
  if (m > 20) throw std::invalid_argument("simplicial_project_faces: too many generators");
  const double scale = scale_of(x) * std::max(1.0, V.norm());
  const double feas_tol = 1e-12 * scale;
  const double kkt_tol = 1e-10 * scale;

  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    int k = 0;
    for (int i = 0; i < m; ++i) k += (mask >> i) & 1u;
    Vec lam = Vec::Zero(m);
    Vec y = Vec::Zero(x.size());
    if (k > 0) {
      Mat Vs(V.rows(), k);
      int c = 0;
      for (int i = 0; i < m; ++i) {
        if ((mask >> i) & 1u) Vs.col(c++) = V.col(i);
      }
      Vec ls = Vs.colPivHouseholderQr().solve(x);
      bool nonneg = true;
      for (int i = 0; i < k; ++i) {
        if (ls[i] < -feas_tol) nonneg = false;
      }
      if (!nonneg) continue;
      c = 0;
      for (int i = 0; i < m; ++i) {
        if ((mask >> i) & 1u) lam[i] = std::max(ls[c++], 0.0);
      }
      y = V * lam;
    }
    Vec r = x - y;
    if ((V.transpose() * r).maxCoeff() <= kkt_tol) return y;
  }
  // unreachable for consistent input; fall back to the active-set path
  return simplicial_project_nnls(V, x);
}

Vec simplicial_project_nnls(const Mat& V, const Vec& x) { return V * nnls(V, x); }

Vec simplicial_coefficients(const Mat& V, const Vec& x) {
  return V.colPivHouseholderQr().solve(x);
}

}  // namespace detail

ConeSpec ConeSpec::nonneg_orthant(int dim) {
  if (dim < 1) throw std::invalid_argument("ConeSpec: dim must be >= 1");
  ConeSpec c;
  c.kind_ = Kind::NonnegOrthant;
  c.dim_ = dim;
  return c;
}

ConeSpec ConeSpec::circular(int dim, double alpha) {
  if (dim < 2) throw std::invalid_argument("ConeSpec: circular cone needs dim >= 2");
  if (!(alpha >= 1.0)) throw std::invalid_argument("ConeSpec: circular cone needs alpha >= 1");
  ConeSpec c;
  c.kind_ = Kind::Circular;
  c.dim_ = dim;
  c.alpha_ = alpha;
  return c;
}

ConeSpec ConeSpec::simplicial(Mat generators) {
  if (generators.cols() < 1 || generators.rows() < 1) {
    throw std::invalid_argument("ConeSpec: empty generator set");
  }
  if (generators.cols() > generators.rows()) {
    throw std::invalid_argument("ConeSpec: more generators than ambient dimension");
  }
  Eigen::ColPivHouseholderQR<Mat> qr(generators);
  if (qr.rank() != generators.cols()) {
    throw std::invalid_argument("ConeSpec: generators must be linearly independent");
  }
  ConeSpec c;
  c.kind_ = Kind::Simplicial;
  c.dim_ = static_cast<int>(generators.rows());
  c.generators_ = std::move(generators);
  return c;
}

ConeSpec ConeSpec::halfspace_cone(Vec normal) {
  if (normal.size() < 2) throw std::invalid_argument("ConeSpec: normal needs >= 2 entries");
  const double q = lorentz_inner(normal, normal);
  if (std::abs(q) <= kTolZero * normal.squaredNorm()) {
    throw std::invalid_argument("ConeSpec: hyperplane normal is lightlike");
  }
  ConeSpec c;
  c.kind_ = Kind::HalfSpaceCone;
  c.dim_ = static_cast<int>(normal.size());
  c.normal_ = std::move(normal);
  return c;
}

bool ConeSpec::contains(const Vec& x, double tol) const {
  if (x.size() != dim_) return false;
  switch (kind_) {
    case Kind::NonnegOrthant:
      return (x.array() >= -tol).all();
    case Kind::Circular:
      return x[dim_ - 1] >= alpha_ * x.head(dim_ - 1).norm() - tol;
    case Kind::Simplicial: {
      Vec lam = detail::nnls(generators_, x);
      return (generators_ * lam - x).norm() <= tol + 1e-12 * scale_of(x);
    }
    case Kind::HalfSpaceCone:
      return normal_.dot(x) >= -tol * normal_.norm() && in_lorentz(x, tol);
  }
  return false;
}

Vec euclid_project(const ConeSpec& cone, const Vec& x) {
  if (x.size() != cone.dim()) throw std::invalid_argument("euclid_project: size mismatch");
  switch (cone.kind()) {
    case ConeSpec::Kind::NonnegOrthant:
      return x.cwiseMax(0.0);
    case ConeSpec::Kind::Circular:
      return circular_project(x, cone.alpha());
    case ConeSpec::Kind::Simplicial:
      if (cone.dim() <= 16) return detail::simplicial_project_faces(cone.generators(), x);
      return detail::simplicial_project_nnls(cone.generators(), x);
    case ConeSpec::Kind::HalfSpaceCone:
      return halfspace_project(cone.normal(), x);
  }
  throw std::logic_error("euclid_project: unknown cone kind");
}

Vec project_spanned_closure(const ConeSpec& cone, const Vec& x, double tol) {
  switch (cone.kind()) {
    case ConeSpec::Kind::Circular:
    case ConeSpec::Kind::HalfSpaceCone:
      return euclid_project(cone, x);
    case ConeSpec::Kind::NonnegOrthant: {
      auto pa = [](const Vec& v) { return Vec(v.cwiseMax(0.0)); };
      auto pb = [](const Vec& v) { return lorentz_project(v); };
      if (pa(x) == x && in_lorentz(x, 0.0)) return x;
      return dykstra(x, pa, pb, tol, 100000);
    }
    case ConeSpec::Kind::Simplicial: {
      const Mat& V = cone.generators();
      auto pa = [&](const Vec& v) {
        if (V.rows() <= 16) return detail::simplicial_project_faces(V, v);
        return detail::simplicial_project_nnls(V, v);
      };
      auto pb = [](const Vec& v) { return lorentz_project(v); };
      return dykstra(x, pa, pb, tol, 100000);
    }
  }
  throw std::logic_error("project_spanned_closure: unknown cone kind");
}

Vec brute_force_cone_argmin(const ConeSpec& cone, const Vec& x, int resolution) {
  if (cone.dim() > 3) {
    throw std::invalid_argument("brute_force_cone_argmin: supported for dim <= 3 only");
  }
  if (resolution < 8) throw std::invalid_argument("brute_force_cone_argmin: resolution too low");
  const double member_tol = 1e-9;

  Vec best = Vec::Zero(cone.dim());
  double best_d = x.norm();
  auto consider = [&](const Vec& dir) {
    if (!cone.contains(dir, member_tol)) return;
    const double t = std::max(x.dot(dir), 0.0);
    Vec y = t * dir;
    const double d = (x - y).norm();
    if (d < best_d) {
      best_d = d;
      best = y;
    }
  };

  if (cone.dim() == 2) {
    for (int k = 0; k < resolution; ++k) {
      const double th = 2.0 * std::numbers::pi * k / resolution;
      Vec d(2);
      d << std::cos(th), std::sin(th);
      consider(d);
    }
  } else {
    // spherical Fibonacci lattice
    const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < resolution; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / resolution;
      const double r = std::sqrt(std::max(1.0 - z * z, 0.0));
      const double th = ga * k;
      Vec d(3);
      d << r * std::cos(th), r * std::sin(th), z;
      consider(d);
    }
  }
  return best;
}

std::vector<Vec> sample_cone_points(const ConeSpec& cone, int count, bool intersect_lorentz) {
  if (count < 1) throw std::invalid_argument("sample_cone_points: count must be positive");
  const int n1 = cone.dim();
  std::vector<Vec> out;
  out.reserve(count);
  auto push = [&](Vec z) {
    if (static_cast<int>(out.size()) < count && z.norm() > 0.0) out.push_back(z / z.norm());
  };

  switch (cone.kind()) {
    case ConeSpec::Kind::NonnegOrthant: {
      if (!intersect_lorentz) {
        for (int i = 0; i < n1 && static_cast<int>(out.size()) < count; ++i) {
          push(Vec::Unit(n1, i));
        }
        for (const Vec& u : kronecker_sequence(n1, count)) {
          push(u);
          if (static_cast<int>(out.size()) >= count) break;
        }
      } else {
        push(Vec::Unit(n1, n1 - 1));
        for (int i = 0; i + 1 < n1 && static_cast<int>(out.size()) < count; ++i) {
          Vec z = Vec::Zero(n1);
          z[i] = 1.0;
          z[n1 - 1] = 1.0;
          push(z);  // extreme rays of orthant intersect L
        }
        for (const Vec& u : kronecker_sequence(n1 - 1, 8 * count)) {
          if (u.norm() > 1.0) continue;
          Vec z(n1);
          z.head(n1 - 1) = u;
          z[n1 - 1] = 1.0;
          push(z);
          if (static_cast<int>(out.size()) >= count) break;
        }
      }
      break;
    }
    case ConeSpec::Kind::Circular: {
      const double alpha = cone.alpha();
      push(Vec::Unit(n1, n1 - 1));
      const auto seq = kronecker_sequence(n1 - 1, count);
      for (size_t k = 0; k < seq.size() && static_cast<int>(out.size()) < count; ++k) {
        Vec g(n1 - 1);
        for (int j = 0; j < n1 - 1; ++j) {
          g[j] = inverse_normal_cdf(std::min(std::max(seq[k][j], 1e-12), 1.0 - 1e-12));
        }
        if (g.norm() == 0.0) continue;
        g /= g.norm();
        Vec z(n1);
        if (k % 2 == 0) {
          z.head(n1 - 1) = g;  // boundary ray
          z[n1 - 1] = alpha;
        } else {
          z.head(n1 - 1) = 0.5 * g;  // interior ray
          z[n1 - 1] = alpha;
        }
        push(z);
      }
      break;
    }
    case ConeSpec::Kind::Simplicial: {
      const Mat& V = cone.generators();
      const int m = static_cast<int>(V.cols());
      if (!intersect_lorentz) {
        for (int i = 0; i < m && static_cast<int>(out.size()) < count; ++i) push(V.col(i));
        for (const Vec& u : kronecker_sequence(m, count)) {
          push(V * u);
          if (static_cast<int>(out.size()) >= count) break;
        }
      } else {
        Vec apex = Vec::Unit(n1, n1 - 1);
        // apex is a sample only if the cone actually contains it
        if ((V * detail::nnls(V, apex) - apex).norm() <= 1e-10) push(apex);
        for (const Vec& u : kronecker_sequence(m, 16 * count)) {
          Vec z = V * u;
          if (!in_lorentz(z, 0.0)) continue;
          push(z);
          if (static_cast<int>(out.size()) >= count) break;
        }
      }
      break;
    }
    case ConeSpec::Kind::HalfSpaceCone: {
      const Vec& a = cone.normal();
      Vec apex = Vec::Unit(n1, n1 - 1);
      if (a.dot(apex) >= 0.0) push(apex);
      const Mat B = hyperplane_basis(a);
      for (int i = 0; i < B.cols() && static_cast<int>(out.size()) < count; ++i) {
        if (in_lorentz(B.col(i), 0.0)) push(B.col(i));
        if (in_lorentz(-B.col(i), 0.0)) push(-B.col(i));
      }
      for (const Vec& u : kronecker_sequence(n1 - 1, 16 * count)) {
        Vec xi = 2.0 * u.array() - 1.0;
        if (xi.norm() > 1.0) continue;
        Vec z(n1);
        z.head(n1 - 1) = xi;
        z[n1 - 1] = 1.0;
        if (a.dot(z) < 0.0) continue;
        push(z);
        if (static_cast<int>(out.size()) >= count) break;
      }
      break;
    }
  }
  return out;
}

}  // namespace hyproj
