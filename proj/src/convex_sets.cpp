#include "hyproj/convex_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hyproj/rng.hpp"

namespace hyproj {

namespace {

Vec apply_j(const Vec& x) {
  Vec y = x;
  y[y.size() - 1] = -y[y.size() - 1];
  return y;
}

// Disk chart of the upper sheet: xi in the open unit ball maps to the point of
// H^n_kappa on the ray through (xi, 1).
HPoint from_disk(const ManifoldParams& m, const Vec& xi) {
  Vec z(m.n + 1);
  z.head(m.n) = xi;
  z[m.n] = 1.0;
  return renormalize(m, std::move(z));
}

}  // namespace

ConvexSetSpec ConvexSetSpec::ball(const ManifoldParams& m, HPoint center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("ConvexSetSpec::ball: radius must be positive");
  }
  if (!on_manifold(m, center.x)) {
    throw std::invalid_argument("ConvexSetSpec::ball: center is not on the manifold");
  }
  ConvexSetSpec s;
  s.kind_ = Kind::Ball;
  s.m_ = m;
  s.center_ = std::move(center);
  s.radius_ = radius;
  return s;
}

ConvexSetSpec ConvexSetSpec::orthant_cap(const ManifoldParams& m) {
  ConvexSetSpec s;
  s.kind_ = Kind::OrthantCap;
  s.m_ = m;
  return s;
}

ConvexSetSpec ConvexSetSpec::simplicial_cap(const ManifoldParams& m,
                                            const Mat& horizontal_generators) {
  if (horizontal_generators.rows() != m.n + 1) {
    throw std::invalid_argument("simplicial_cap: generators must live in R^{n+1}");
  }
  if (horizontal_generators.cols() < 1 || horizontal_generators.cols() > m.n) {
    throw std::invalid_argument("simplicial_cap: need between 1 and n horizontal generators");
  }
  Mat full(m.n + 1, horizontal_generators.cols() + 1);
  for (int j = 0; j < horizontal_generators.cols(); ++j) {
    Vec v = horizontal_generators.col(j);
    if (v.norm() <= kTolZero) throw std::invalid_argument("simplicial_cap: zero generator");
    if (std::abs(v[m.n]) > 1e-12 * v.norm()) {
      throw std::invalid_argument("simplicial_cap: generators must have zero last coordinate");
    }
    v[m.n] = 0.0;
    full.col(j) = v;
  }
  full.col(horizontal_generators.cols()) = Vec::Unit(m.n + 1, m.n);
  ConeSpec::simplicial(full);  // validates independence
  ConvexSetSpec s;
  s.kind_ = Kind::SimplicialCap;
  s.m_ = m;
  s.generators_ = std::move(full);
  return s;
}

ConvexSetSpec ConvexSetSpec::circular_cap(const ManifoldParams& m, double alpha) {
  if (!(alpha > 1.0)) throw std::invalid_argument("circular_cap: alpha must exceed 1");
  ConvexSetSpec s;
  s.kind_ = Kind::CircularCap;
  s.m_ = m;
  s.alpha_ = alpha;
  return s;
}

ConvexSetSpec ConvexSetSpec::halfspace_cap(const ManifoldParams& m, Vec normal) {
  if (normal.size() != m.n + 1) throw std::invalid_argument("halfspace_cap: size mismatch");
  if (!(lorentz_inner(normal, normal) > 0.0)) {
    throw std::invalid_argument("halfspace_cap: normal must be spacelike");
  }
  ConvexSetSpec s;
  s.kind_ = Kind::HalfSpaceCap;
  s.m_ = m;
  s.normal_ = std::move(normal);
  return s;
}

ConeSpec spanned_cone(const ConvexSetSpec& set) {
  const int n1 = set.manifold().n + 1;
  switch (set.kind()) {
    case ConvexSetSpec::Kind::OrthantCap:
      return ConeSpec::nonneg_orthant(n1);
    case ConvexSetSpec::Kind::SimplicialCap:
      return ConeSpec::simplicial(set.generators());
    case ConvexSetSpec::Kind::CircularCap:
      return ConeSpec::circular(n1, set.alpha());
    case ConvexSetSpec::Kind::HalfSpaceCap:
      return ConeSpec::halfspace_cone(set.normal());
    case ConvexSetSpec::Kind::Ball:
      throw std::invalid_argument("spanned_cone: a ball is not a cone section");
  }
  throw std::logic_error("spanned_cone: unknown kind");
}

bool contains(const ConvexSetSpec& set, const HPoint& p, double tol) {
  const ManifoldParams& m = set.manifold();
  switch (set.kind()) {
    case ConvexSetSpec::Kind::Ball:
      return distance(m, set.center(), p) <= set.radius() + tol;
    case ConvexSetSpec::Kind::OrthantCap:
      return p.x.minCoeff() >= -tol;
    case ConvexSetSpec::Kind::SimplicialCap: {
      Vec lam = detail::nnls(set.generators(), p.x);
      return (set.generators() * lam - p.x).norm() <= tol * std::max(1.0, p.x.norm());
    }
    case ConvexSetSpec::Kind::CircularCap:
      return set.alpha() * p.x.head(m.n).norm() - p.x[m.n] <= tol * std::max(1.0, p.x.norm());
    case ConvexSetSpec::Kind::HalfSpaceCap:
      return set.normal().dot(p.x) >= -tol * set.normal().norm() * p.x.norm();
  }
  return false;
}

HPoint normalize_to_hyperboloid(const ManifoldParams& m, const Vec& u) {
  if (u.size() != m.n + 1) throw std::invalid_argument("normalize_to_hyperboloid: size mismatch");
  if (!(lorentz_inner(u, u) < 0.0)) {
    throw std::invalid_argument("normalize_to_hyperboloid: vector is not timelike");
  }
  if (!(u[m.n] > 0.0)) {
    throw std::invalid_argument("normalize_to_hyperboloid: last coordinate must be positive");
  }
  return renormalize(m, u);
}

HPoint project(const ConvexSetSpec& set, const HPoint& p) {
  const ManifoldParams& m = set.manifold();
  switch (set.kind()) {
    case ConvexSetSpec::Kind::Ball: {
      const double d = distance(m, set.center(), p);
      if (d <= set.radius()) return p;
      HTangent lg = log_map(m, set.center(), p);
      lg.v *= set.radius() / d;
      return exp_map(m, set.center(), lg);
    }
    case ConvexSetSpec::Kind::OrthantCap: {
      Vec u = p.x.cwiseMax(0.0);
      return normalize_to_hyperboloid(m, u);
    }
    case ConvexSetSpec::Kind::SimplicialCap: {
      Vec u = euclid_project(ConeSpec::simplicial(set.generators()), p.x);
      return normalize_to_hyperboloid(m, u);
    }
    case ConvexSetSpec::Kind::CircularCap: {
      Vec u = euclid_project(ConeSpec::circular(m.n + 1, set.alpha()), p.x);
      return normalize_to_hyperboloid(m, u);
    }
    case ConvexSetSpec::Kind::HalfSpaceCap: {
      const Vec& a = set.normal();
      const double s = a.dot(p.x);
      if (s >= 0.0) return p;
      const double aa = lorentz_inner(a, a);
      Vec u = p.x - (s / aa) * apply_j(a);
      return normalize_to_hyperboloid(m, u);
    }
  }
  throw std::logic_error("project: unknown kind");
}

std::vector<HPoint> sample_set_points(const ConvexSetSpec& set, int count) {
  if (count < 1) throw std::invalid_argument("sample_set_points: count must be positive");
  const ManifoldParams& m = set.manifold();
  std::vector<HPoint> out;
  out.reserve(count);

  if (set.kind() == ConvexSetSpec::Kind::Ball) {
    // geodesic polar coordinates around the center
    out.push_back(set.center());
    for (const Vec& u : kronecker_sequence(m.n + 1, count)) {
      Vec g(m.n + 1);
      for (int j = 0; j < m.n; ++j) {
        g[j] = inverse_normal_cdf(std::min(std::max(u[j], 1e-12), 1.0 - 1e-12));
      }
      g[m.n] = 0.0;
      HTangent dir = tangent_project(m, set.center(), g);
      const double nd = tangent_norm(m, dir);
      if (nd <= kTolZero) continue;
      const double rho = set.radius() * std::pow(u[m.n], 1.0 / m.n);
      dir.v *= rho / nd;
      out.push_back(exp_map(m, set.center(), dir));
      if (static_cast<int>(out.size()) >= count) break;
    }
    return out;
  }

  // Cap kinds: disk chart with a margin keeping samples strictly timelike.
  const double margin = 0.02;
  auto feasible = [&](const Vec& xi) {
    if (xi.norm() > 1.0 - margin) return false;
    switch (set.kind()) {
      case ConvexSetSpec::Kind::OrthantCap:
        return xi.minCoeff() >= 0.0;
      case ConvexSetSpec::Kind::SimplicialCap: {
        Vec z(m.n + 1);
        z.head(m.n) = xi;
        z[m.n] = 1.0;
        Vec lam = detail::nnls(set.generators(), z);
        return (set.generators() * lam - z).norm() <= 1e-10;
      }
      case ConvexSetSpec::Kind::CircularCap:
        return set.alpha() * xi.norm() <= 1.0;
      case ConvexSetSpec::Kind::HalfSpaceCap: {
        Vec z(m.n + 1);
        z.head(m.n) = xi;
        z[m.n] = 1.0;
        return set.normal().dot(z) >= 0.0;
      }
      default:
        return false;
    }
  };

  out.push_back(from_disk(m, Vec::Zero(m.n)));  // apex, feasible for every cap kind
  if (!feasible(Vec::Zero(m.n))) out.clear();
  for (const Vec& u : kronecker_sequence(m.n, 64 * count)) {
    Vec xi = set.kind() == ConvexSetSpec::Kind::OrthantCap
                 ? Vec(u)
                 : Vec(2.0 * u.array() - 1.0);
    if (!feasible(xi)) continue;
    out.push_back(from_disk(m, xi));
    if (static_cast<int>(out.size()) >= count) break;
  }
  return out;
}

CertifyReport certify_projection(const ConvexSetSpec& set, const HPoint& p,
                                 const HPoint& candidate, int samples, double tol) {
  if (!contains(set, candidate, 1e-7)) {
    throw std::invalid_argument("certify_projection: candidate is not in the set");
  }
  const ManifoldParams& m = set.manifold();
  const HTangent to_p = log_map(m, candidate, p);
  CertifyReport rep;
  for (const HPoint& q : sample_set_points(set, samples)) {
    const HTangent to_q = log_map(m, candidate, q);
    rep.max_violation = std::max(rep.max_violation, lorentz_inner(to_p.v, to_q.v));
  }
  rep.certified = rep.max_violation <= tol;
  return rep;
}

HPoint brute_force_intrinsic(const ConvexSetSpec& set, const HPoint& p, int resolution) {
  const ManifoldParams& m = set.manifold();
  if (m.n != 2) throw std::invalid_argument("brute_force_intrinsic: implemented for n = 2");
  if (resolution < 16) throw std::invalid_argument("brute_force_intrinsic: resolution too low");

  auto feasible = [&](const Vec& xi, HPoint* q) {
    if (xi.norm() >= 1.0 - 1e-9) return false;
    switch (set.kind()) {
      case ConvexSetSpec::Kind::Ball:
        *q = from_disk(m, xi);
        return distance(m, set.center(), *q) <= set.radius();
      case ConvexSetSpec::Kind::OrthantCap:
        if (xi.minCoeff() < 0.0) return false;
        break;
      case ConvexSetSpec::Kind::SimplicialCap: {
        Vec z(3);
        z << xi[0], xi[1], 1.0;
        Vec lam = detail::nnls(set.generators(), z);
        if ((set.generators() * lam - z).norm() > 1e-10) return false;
        break;
      }
      case ConvexSetSpec::Kind::CircularCap:
        if (set.alpha() * xi.norm() > 1.0) return false;
        break;
      case ConvexSetSpec::Kind::HalfSpaceCap: {
        Vec z(3);
        z << xi[0], xi[1], 1.0;
        if (set.normal().dot(z) < 0.0) return false;
        break;
      }
    }
    *q = from_disk(m, xi);
    return true;
  };

  bool found = false;
  HPoint best{Vec()};
  double best_ip = -std::numeric_limits<double>::infinity();
  auto consider = [&](const HPoint& q) {
    const double ip = lorentz_inner(p.x, q.x);
    if (ip > best_ip) {
      best_ip = ip;
      best = q;
      found = true;
    }
  };

  Vec anchor = Vec::Zero(2);
  long n_feas = 0;
  Vec xi(2);
  HPoint q{Vec()};
  for (int i = -resolution; i <= resolution; ++i) {
    for (int j = -resolution; j <= resolution; ++j) {
      xi << static_cast<double>(i) / resolution, static_cast<double>(j) / resolution;
      if (!feasible(xi, &q)) continue;
      consider(q);
      anchor += xi;
      ++n_feas;
    }
  }
  if (!found) throw std::runtime_error("brute_force_intrinsic: no feasible grid sample");

  // A square lattice alone cannot pin a minimizer that sits on a curved
  // boundary: the deepest feasible sample drifts along the boundary by several
  // cells. Sweep rays from an interior anchor and bisect the last feasible
  // point on each, so the boundary is sampled at the lattice pitch as well. The
  // sets are convex in this chart, hence star-shaped around the anchor.
  anchor /= static_cast<double>(n_feas);
  if (!feasible(anchor, &q)) anchor = best.x.head(2) / best.x[2];
  const int n_rays = 4 * resolution;
  const double rim = 1.0 - 1e-9;
  for (int k = 0; k < n_rays; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / n_rays;
    Vec dir(2);
    dir << std::cos(phi), std::sin(phi);
    const double b = anchor.dot(dir);
    const double c0 = anchor.squaredNorm() - rim * rim;
    double t_hi = -b + std::sqrt(std::max(b * b - c0, 0.0));
    if (feasible(anchor + t_hi * dir, &q)) {  // unbounded cap: the ray stays feasible
      consider(q);
      continue;
    }
    double t_lo = 0.0;
    HPoint q_in{Vec()};
    for (int it = 0; it < 52; ++it) {
      const double mid = 0.5 * (t_lo + t_hi);
      if (feasible(anchor + mid * dir, &q)) {
        t_lo = mid;
        q_in = q;
      } else {
        t_hi = mid;
      }
    }
    if (q_in.x.size() != 0) consider(q_in);
  }
  return best;
}

double brute_force_pitch(const ConvexSetSpec& set, const HPoint& q, int resolution) {
  const ManifoldParams& m = set.manifold();
  if (m.n != 2) throw std::invalid_argument("brute_force_pitch: implemented for n = 2");
  Vec xi = q.x.head(2) / q.x[2];
  double pitch = 0.0;
  for (int di = -1; di <= 1; ++di) {
    for (int dj = -1; dj <= 1; ++dj) {
      if (di == 0 && dj == 0) continue;
      Vec nb = xi;
      nb[0] += static_cast<double>(di) / resolution;
      nb[1] += static_cast<double>(dj) / resolution;
      if (nb.norm() >= 1.0 - 1e-9) continue;
      pitch = std::max(pitch, distance(m, q, from_disk(m, nb)));
    }
  }
  return pitch;
}

LorentzCrossCheck cross_check_via_lorentz(const ConvexSetSpec& set, const HPoint& p) {
  const ManifoldParams& m = set.manifold();
  const ConeSpec cone = spanned_cone(set);
  LorentzCrossCheck out{HPoint{Vec()}, {}, 0.0};
  out.lproj = l_project_natural(cone, p.x);
  out.point = normalize_to_hyperboloid(m, out.lproj.nonzero);

  // converse: the intrinsic projection scaled back must be the Lorentz projection
  const HPoint v = project(set, p);
  Vec u2 = -m.kappa * lorentz_inner(p.x, v.x) * v.x;
  out.converse_residual =
      l_projection_violation(p.x, u2, sample_cone_points(cone, 512, true));
  return out;
}

}  // namespace hyproj
