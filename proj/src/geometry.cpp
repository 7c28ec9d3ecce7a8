#include "hyproj/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hyproj {

namespace {

void check_dim(const ManifoldParams& m, const Vec& x, const char* what) {
  if (x.size() != m.n + 1) {
    throw std::invalid_argument(std::string(what) + ": expected length " +
                                std::to_string(m.n + 1) + ", got " + std::to_string(x.size()));
  }
}

}  // namespace

ManifoldParams make_manifold(int n, double kappa) {
  if (n < 1) throw std::invalid_argument("make_manifold: n must be >= 1");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("make_manifold: kappa must be positive and finite");
  }
  return ManifoldParams{n, kappa};
}

double lorentz_inner(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("lorentz_inner: size mismatch");
  if (x.size() < 2) throw std::invalid_argument("lorentz_inner: need at least 2 entries");
  const Eigen::Index n = x.size() - 1;
  return x.head(n).dot(y.head(n)) - x[n] * y[n];
}

bool on_manifold(const ManifoldParams& m, const Vec& x, double tol) {
  if (x.size() != m.n + 1) return false;
  if (!(x[m.n] > 0.0)) return false;
  const double ip = lorentz_inner(x, x);
  // relative to the sheet level 1/kappa
  return std::abs(ip + 1.0 / m.kappa) <= tol * (1.0 / m.kappa);
}

HPoint make_hpoint(const ManifoldParams& m, Vec x) {
  check_dim(m, x, "make_hpoint");
  if (!on_manifold(m, x)) throw std::invalid_argument("make_hpoint: not on the upper sheet");
  return HPoint{std::move(x)};
}

HTangent make_htangent(const ManifoldParams& m, HPoint base, Vec v) {
  check_dim(m, base.x, "make_htangent");
  check_dim(m, v, "make_htangent");
  const double ip = lorentz_inner(base.x, v);
  const double scale = std::max(1.0, v.norm() * base.x.norm());
  if (std::abs(ip) > kTolManifold * scale) {
    throw std::invalid_argument("make_htangent: vector is not tangent at base");
  }
  return HTangent{std::move(base), std::move(v)};
}

HPoint renormalize(const ManifoldParams& m, Vec x) {
  check_dim(m, x, "renormalize");
  const double ip = lorentz_inner(x, x);
  if (!(ip < 0.0)) throw std::invalid_argument("renormalize: vector is not timelike");
  if (!(x[m.n] > 0.0)) throw std::invalid_argument("renormalize: last coordinate must be positive");
  x /= std::sqrt(-m.kappa * ip);
  return HPoint{std::move(x)};
}

namespace {

// Closed-form exp/geodesic outputs sit off the sheet only by round-off, but
// rescaling them through the measured <x,x> is ill conditioned: the spatial
// and time squares cancel at scale |x|^2, so the rescale drifts the point
// radially by ~eps*kappa*|x|^2. The time coordinate is the redundant one;
// rebuilding it from the spatial part is cancellation free and keeps the
// sheet residual at machine level.
HPoint complete_time_coord(const ManifoldParams& m, Vec x) {
  x[m.n] = std::sqrt(x.head(m.n).squaredNorm() + 1.0 / m.kappa);
  return HPoint{std::move(x)};
}

}  // namespace

double distance(const ManifoldParams& m, const HPoint& p, const HPoint& q) {
  // Same quantity as acosh(-kappa <p,q>) / sqrt(kappa), but evaluated through the
  // Lorentz norm of the difference: cosh(sqrt(kappa) d) - 1 = kappa <p-q,p-q> / 2.
  // The acosh form loses half the digits near 1 (it cannot resolve distances
  // below ~1e-8 in doubles); this form stays accurate down to machine precision.
  const Vec diff = p.x - q.x;
  const double dd = std::max(lorentz_inner(diff, diff), 0.0);
  const double sk = std::sqrt(m.kappa);
  return 2.0 / sk * std::asinh(0.5 * sk * std::sqrt(dd));
}

HTangent tangent_project(const ManifoldParams& m, const HPoint& p, const Vec& x) {
  check_dim(m, x, "tangent_project");
  Vec v = x + m.kappa * lorentz_inner(p.x, x) * p.x;
  return HTangent{p, std::move(v)};
}

double tangent_norm(const ManifoldParams&, const HTangent& v) {
  return std::sqrt(std::max(lorentz_inner(v.v, v.v), 0.0));
}

HPoint exp_map(const ManifoldParams& m, const HPoint& p, const HTangent& v) {
  const double nv = std::sqrt(std::max(lorentz_inner(v.v, v.v), 0.0));
  if (nv <= kTolZero) return p;
  const double sk = std::sqrt(m.kappa);
  const double theta = sk * nv;
  if (theta > kMaxExpArg) {
    throw std::range_error("exp_map: sqrt(kappa)|v| exceeds the overflow guard");
  }
  Vec x = std::cosh(theta) * p.x + (std::sinh(theta) / (sk * nv)) * v.v;
  return complete_time_coord(m, std::move(x));
}

HTangent log_map(const ManifoldParams& m, const HPoint& p, const HPoint& q) {
  const double d = distance(m, p, q);
  if (d <= kTolZero) return HTangent{p, Vec::Zero(m.n + 1)};
  HTangent w = tangent_project(m, p, q.x);
  const double nw = tangent_norm(m, w);
  if (nw <= kTolZero) return HTangent{p, Vec::Zero(m.n + 1)};
  w.v *= d / nw;
  return w;
}

HPoint geodesic_segment(const ManifoldParams& m, const HPoint& p, const HPoint& q, double t) {
  const double ip = lorentz_inner(p.x, q.x);
  const double d = distance(m, p, q);
  if (d <= kTolZero) throw std::invalid_argument("geodesic_segment: p and q coincide");
  const double slack = 1e-12 * (1.0 + d);
  if (t < -slack || t > d + slack) {
    throw std::invalid_argument("geodesic_segment: t outside [0, d(p,q)]");
  }
  t = std::min(std::max(t, 0.0), d);
  const double sk = std::sqrt(m.kappa);
  const double den = std::sqrt(std::max(m.kappa * m.kappa * ip * ip - 1.0, 0.0));
  if (den <= kTolZero) throw std::invalid_argument("geodesic_segment: p and q coincide");
  Vec x = (std::cosh(t * sk) + m.kappa * ip * std::sinh(t * sk) / den) * p.x +
          (std::sinh(t * sk) / den) * q.x;
  return complete_time_coord(m, std::move(x));
}

HTangent parallel_transport(const ManifoldParams& m, const HPoint& p, const HPoint& q,
                            const HTangent& v) {
  // denominator kappa<p,q> - 1 <= -2 on the sheet, never vanishes
  const double den = m.kappa * lorentz_inner(p.x, q.x) - 1.0;
  Vec w = v.v - (m.kappa * lorentz_inner(q.x, v.v) / den) * (p.x + q.x);
  return HTangent{q, std::move(w)};
}

HTangent riemannian_gradient(const ManifoldParams& m, const HPoint& p, const Vec& euclid_grad) {
  check_dim(m, euclid_grad, "riemannian_gradient");
  Vec g = euclid_grad;
  g[m.n] = -g[m.n];  // J f'(p)
  return tangent_project(m, p, g);
}

Vec to_poincare(const ManifoldParams& m, const HPoint& p) {
  const double sk = std::sqrt(m.kappa);
  return p.x.head(m.n) / (sk * p.x[m.n] + 1.0);
}

HPoint from_poincare(const ManifoldParams& m, const Vec& y) {
  if (y.size() != m.n) throw std::invalid_argument("from_poincare: expected length n");
  const double sk = std::sqrt(m.kappa);
  const double nsq = y.squaredNorm();
  if (!(m.kappa * nsq < 1.0)) {
    throw std::invalid_argument("from_poincare: point outside the model ball");
  }
  const double s = 2.0 / (1.0 - m.kappa * nsq);
  Vec x(m.n + 1);
  x.head(m.n) = s * y;
  x[m.n] = (s - 1.0) / sk;
  return renormalize(m, std::move(x));
}

}  // namespace hyproj
