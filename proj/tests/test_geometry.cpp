#include "hyproj/geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "hyproj/rng.hpp"
#include "test_util.hpp"

namespace hyproj {
namespace {

using testutil::origin_point;
using testutil::random_point;
using testutil::random_tangent;

constexpr double kSinh1 = 1.1752011936438014;
constexpr double kCosh1 = 1.5430806348152437;

Vec vec3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

TEST(LorentzInner, BasisAndApex) {
  Vec e1 = Vec::Zero(3), e3 = Vec::Zero(3);
  e1[0] = 1.0;
  e3[2] = 1.0;
  EXPECT_DOUBLE_EQ(lorentz_inner(e1, e1), 1.0);
  EXPECT_DOUBLE_EQ(lorentz_inner(e3, e3), -1.0);
  EXPECT_DOUBLE_EQ(lorentz_inner(vec3(0, 0, 1), vec3(0, 0, 1)), -1.0);
}

TEST(LorentzInner, RejectsBadShapes) {
  Vec a = Vec::Zero(3), b = Vec::Zero(4), c = Vec::Zero(1);
  EXPECT_THROW(lorentz_inner(a, b), std::invalid_argument);
  EXPECT_THROW(lorentz_inner(c, c), std::invalid_argument);
}

TEST(Constructors, ValidateMembership) {
  const ManifoldParams m = make_manifold(2, 1.0);
  EXPECT_THROW(make_hpoint(m, vec3(0, 0, -1)), std::invalid_argument);  // lower sheet
  EXPECT_THROW(make_hpoint(m, vec3(1, 0, 1)), std::invalid_argument);   // lightlike
  EXPECT_THROW(make_manifold(0, 1.0), std::invalid_argument);
  EXPECT_THROW(make_manifold(2, 0.0), std::invalid_argument);
  EXPECT_THROW(make_manifold(2, -1.0), std::invalid_argument);

  const HPoint p = make_hpoint(m, vec3(0, 0, 1));
  EXPECT_THROW(make_htangent(m, p, vec3(0, 0, 1)), std::invalid_argument);  // not tangent
  EXPECT_NO_THROW(make_htangent(m, p, vec3(0.3, -0.2, 0)));

  EXPECT_THROW(renormalize(m, vec3(1, 0, 0.5)), std::invalid_argument);  // spacelike
  EXPECT_THROW(renormalize(m, vec3(0, 0, -2)), std::invalid_argument);   // wrong sheet
  const HPoint r = renormalize(m, vec3(0, 0, 2));
  EXPECT_NEAR(r.x[2], 1.0, 1e-15);
}

TEST(OnManifold, ToleranceAndSheet) {
  const ManifoldParams m = make_manifold(2, 4.0);
  Vec x = vec3(0, 0, 0.5);  // <x,x> = -1/4
  EXPECT_TRUE(on_manifold(m, x));
  x[2] = 0.5 * (1.0 + 1e-6);
  EXPECT_FALSE(on_manifold(m, x));
  EXPECT_FALSE(on_manifold(m, vec3(0, 0, -0.5)));
  EXPECT_FALSE(on_manifold(m, Vec::Zero(4)));
}

TEST(Distance, KnownValuesAndAxioms) {
  const ManifoldParams m = make_manifold(2, 1.0);
  const HPoint p = make_hpoint(m, vec3(0, 0, 1));
  const HPoint q = make_hpoint(m, vec3(kSinh1, 0, kCosh1));
  EXPECT_DOUBLE_EQ(distance(m, p, p), 0.0);
  EXPECT_NEAR(distance(m, p, q), 1.0, 1e-14);
  EXPECT_DOUBLE_EQ(distance(m, p, q), distance(m, q, p));
}

TEST(Distance, ExpRoundTripAtKappa4) {
  const ManifoldParams m = make_manifold(3, 4.0);
  NormalSampler rng(7);
  const HPoint p = random_point(m, rng, 1.0);
  const HTangent v = random_tangent(m, p, rng, 0.7);
  EXPECT_NEAR(distance(m, p, exp_map(m, p, v)), 0.7, 1e-12);
}

TEST(Distance, AgreesWithArcoshForm) {
  const ManifoldParams m = make_manifold(5, 0.25);
  NormalSampler rng(11);
  for (int i = 0; i < 200; ++i) {
    const HPoint p = random_point(m, rng, 4.0);
    const HPoint q = random_point(m, rng, 4.0);
    const double d = distance(m, p, q);
    const double arg = std::max(-m.kappa * lorentz_inner(p.x, q.x), 1.0);
    const double ref = std::acosh(arg) / std::sqrt(m.kappa);
    EXPECT_NEAR(d, ref, 1e-11 * std::max(1.0, ref));
  }
}

// The arcosh form cannot resolve separations below ~1e-8; the implementation must.
TEST(Distance, ResolvesTinySeparations) {
  const ManifoldParams m = make_manifold(2, 1.0);
  NormalSampler rng(3);
  const HPoint p = random_point(m, rng, 1.0);
  for (double h : {1e-10, 1e-12, 1e-13}) {
    const HPoint q = exp_map(m, p, random_tangent(m, p, rng, h));
    const double d = distance(m, p, q);
    EXPECT_GT(d, 0.5 * h);
    EXPECT_LT(d, 2.0 * h);
  }
}

TEST(TangentProject, KernelFixedPointIdempotent) {
  const ManifoldParams m = make_manifold(4, 2.0);
  NormalSampler rng(5);
  const HPoint p = random_point(m, rng, 1.5);
  // p itself projects to zero.
  EXPECT_LE(tangent_project(m, p, p.x).v.norm(), 1e-14 * p.x.norm());

  Vec a(m.n + 1);
  for (int i = 0; i <= m.n; ++i) a[i] = rng.normal();
  const HTangent t1 = tangent_project(m, p, a);
  EXPECT_LE(std::abs(lorentz_inner(p.x, t1.v)), 1e-12 * t1.v.norm());
  // Already tangent: unchanged. Applied twice: unchanged.
  const HTangent t2 = tangent_project(m, p, t1.v);
  EXPECT_LE((t2.v - t1.v).norm(), 1e-13 * t1.v.norm());
}

TEST(ExpMap, KnownValueZeroVectorClosure) {
  const ManifoldParams m = make_manifold(2, 1.0);
  const HPoint p = make_hpoint(m, vec3(0, 0, 1));
  const HPoint q = exp_map(m, p, make_htangent(m, p, vec3(1, 0, 0)));
  EXPECT_NEAR(q.x[0], kSinh1, 1e-15);
  EXPECT_NEAR(q.x[1], 0.0, 1e-15);
  EXPECT_NEAR(q.x[2], kCosh1, 1e-15);

  const HPoint same = exp_map(m, p, make_htangent(m, p, vec3(0, 0, 0)));
  EXPECT_EQ(same.x, p.x);
}

TEST(ExpMap, ManifoldClosureAcrossCurvatures) {
  NormalSampler rng(17);
  for (double kappa : {0.25, 1.0, 4.0}) {
    for (int n : {2, 50}) {
      const ManifoldParams m = make_manifold(n, kappa);
      for (int i = 0; i < 50; ++i) {
        const HPoint p = random_point(m, rng, 2.0);
        const HPoint q = exp_map(m, p, random_tangent(m, p, rng, 10.0 * rng.uniform()));
        // Relative: the sheet residual is measured against squares of the
        // coordinates, which grow like cosh of the distance from the apex.
        const double scale = std::max(1.0 / kappa, q.x.squaredNorm());
        EXPECT_LE(std::abs(lorentz_inner(q.x, q.x) + 1.0 / kappa), 1e-10 * scale);
        EXPECT_GT(q.x[n], 0.0);
      }
    }
  }
}

TEST(ExpMap, OverflowGuard) {
  const ManifoldParams m = make_manifold(2, 1.0);
  const HPoint p = make_hpoint(m, vec3(0, 0, 1));
  Vec big = vec3(351, 0, 0);
  EXPECT_THROW(exp_map(m, p, make_htangent(m, p, big)), std::range_error);
  // kappa scales the argument: |v| = 200 overflows at kappa = 4 (sqrt(4)*200 = 400).
  const ManifoldParams m4 = make_manifold(2, 4.0);
  const HPoint p4 = make_hpoint(m4, vec3(0, 0, 0.5));
  EXPECT_THROW(exp_map(m4, p4, make_htangent(m4, p4, vec3(200, 0, 0))), std::range_error);
}

TEST(LogMap, KnownValueZeroAndRoundTrip) {
  const ManifoldParams m = make_manifold(2, 1.0);
  const HPoint p = make_hpoint(m, vec3(0, 0, 1));
  const HPoint q = make_hpoint(m, vec3(kSinh1, 0, kCosh1));

  EXPECT_EQ(log_map(m, p, p).v.norm(), 0.0);
  const HTangent l = log_map(m, p, q);
  EXPECT_NEAR(l.v[0], 1.0, 1e-14);
  EXPECT_NEAR(l.v[1], 0.0, 1e-14);
  EXPECT_NEAR(l.v[2], 0.0, 1e-14);
}

TEST(LogMap, InversionAndNormIdentity) {
  NormalSampler rng(23);
  // Base points live in a curvature-normalized ball around the apex: the
  // Lorentz chart itself loses digits like exp(2 sqrt(kappa) D) in the base
  // point's apex distance D, independent of how the operators are written.
  for (double kappa : {0.25, 1.0, 4.0}) {
    const ManifoldParams m = make_manifold(3, kappa);
    for (int i = 0; i < 200; ++i) {
      const HPoint p = random_point(m, rng, 1.0 / std::sqrt(kappa));
      const HPoint q = exp_map(m, p, random_tangent(m, p, rng, 5.0 * rng.uniform()));
      const HTangent l = log_map(m, p, q);
      EXPECT_LE(std::abs(tangent_norm(m, l) - distance(m, p, q)), 1e-10);
      EXPECT_LE(distance(m, exp_map(m, p, l), q), 1e-9);
    }
  }
}

TEST(GeodesicSegment, EndpointsMidpointErrors) {
  const ManifoldParams m = make_manifold(3, 1.0);
  NormalSampler rng(29);
  const HPoint p = random_point(m, rng, 1.0);
  const HPoint q = random_point(m, rng, 2.0);
  const double d = distance(m, p, q);
  ASSERT_GT(d, 1e-6);

  EXPECT_LE(distance(m, geodesic_segment(m, p, q, 0.0), p), 1e-12);
  EXPECT_LE(distance(m, geodesic_segment(m, p, q, d), q), 1e-10);
  const HPoint mid = geodesic_segment(m, p, q, d / 2);
  EXPECT_NEAR(distance(m, p, mid), distance(m, mid, q), 1e-10);
  EXPECT_LE(std::abs(lorentz_inner(mid.x, mid.x) + 1.0), 1e-12);

  EXPECT_THROW(geodesic_segment(m, p, q, -0.1), std::invalid_argument);
  EXPECT_THROW(geodesic_segment(m, p, q, d + 0.1), std::invalid_argument);
  EXPECT_THROW(geodesic_segment(m, p, p, 0.0), std::invalid_argument);
}

TEST(ParallelTransport, IdentityIsometryAndGeodesicVelocity) {
  NormalSampler rng(31);
  for (double kappa : {0.25, 1.0, 4.0}) {
    const ManifoldParams m = make_manifold(3, kappa);
    const HPoint p = random_point(m, rng, 1.0);
    const HTangent v = random_tangent(m, p, rng, 1.3);
    const HTangent w = random_tangent(m, p, rng, 0.4);

    EXPECT_LE((parallel_transport(m, p, p, v).v - v.v).norm(), 1e-14);

    const HPoint q = random_point(m, rng, 2.0);
    const HTangent pv = parallel_transport(m, p, q, v);
    const HTangent pw = parallel_transport(m, p, q, w);
    EXPECT_LE(std::abs(lorentz_inner(pv.v, pv.v) - lorentz_inner(v.v, v.v)), 1e-10);
    EXPECT_LE(std::abs(lorentz_inner(pv.v, pw.v) - lorentz_inner(v.v, w.v)), 1e-10);
    EXPECT_LE(std::abs(lorentz_inner(q.x, pv.v)), 1e-10);

    // Velocity of gamma(t) = exp_p(t u), |u| = 1, transports along the geodesic:
    // gamma'(t) = sqrt(k) sinh(sqrt(k) t) p + cosh(sqrt(k) t) u.
    HTangent u = v;
    u.v /= tangent_norm(m, v);
    const double t = 0.9;
    const double sk = std::sqrt(kappa);
    const HTangent scaled = HTangent{p, t * u.v};
    const HPoint gt = exp_map(m, p, scaled);
    const Vec velocity = sk * std::sinh(sk * t) * p.x + std::cosh(sk * t) * u.v;
    EXPECT_LE((parallel_transport(m, p, gt, u).v - velocity).norm(), 1e-10);
  }
}

TEST(CosineLaw, TriangleIdentity) {
  NormalSampler rng(37);
  for (double kappa : {0.25, 1.0, 4.0}) {
    const ManifoldParams m = make_manifold(3, kappa);
    const double sk = std::sqrt(kappa);
    for (int i = 0; i < 100; ++i) {
      const HPoint x = random_point(m, rng, 1.5);
      const HPoint y = exp_map(m, x, random_tangent(m, x, rng, 0.2 + rng.uniform()));
      const HPoint z = exp_map(m, x, random_tangent(m, x, rng, 0.2 + rng.uniform()));
      const double dxy = distance(m, x, y), dxz = distance(m, x, z), dyz = distance(m, y, z);
      const double cosang =
          lorentz_inner(log_map(m, x, y).v, log_map(m, x, z).v) / (dxy * dxz);
      const double lhs = std::cosh(sk * dyz);
      const double rhs =
          std::cosh(sk * dxy) * std::cosh(sk * dxz) - std::sinh(sk * dxy) * std::sinh(sk * dxz) * cosang;
      EXPECT_NEAR(lhs, rhs, 1e-8 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST(CosineLaw, ComparisonInequality) {
  NormalSampler rng(41);
  const ManifoldParams m = make_manifold(4, 1.0);
  for (int i = 0; i < 300; ++i) {
    const HPoint x = random_point(m, rng, 2.0);
    const HPoint y = random_point(m, rng, 2.0);
    const HPoint z = random_point(m, rng, 2.0);
    const double dxy = distance(m, x, y), dxz = distance(m, x, z), dyz = distance(m, y, z);
    const double lhs =
        dxy * dxy + dxz * dxz - 2.0 * lorentz_inner(log_map(m, x, y).v, log_map(m, x, z).v);
    EXPECT_LE(lhs, dyz * dyz + 1e-10);
  }
}

TEST(RiemannianGradient, TangencyAndLinearFunction) {
  NormalSampler rng(43);
  const ManifoldParams m = make_manifold(5, 2.0);
  const HPoint p = random_point(m, rng, 1.0);
  Vec a(m.n + 1);
  for (int i = 0; i <= m.n; ++i) a[i] = rng.normal();

  // f(p) = <a,p> (Lorentz form) has ambient derivative Ja and gradient a + k<a,p>p.
  Vec ja = a;
  ja[m.n] = -ja[m.n];
  const HTangent g = riemannian_gradient(m, p, ja);
  EXPECT_LE(std::abs(lorentz_inner(p.x, g.v)), 1e-12 * g.v.norm());
  const Vec expected = a + m.kappa * lorentz_inner(a, p.x) * p.x;
  EXPECT_LE((g.v - expected).norm(), 1e-12 * expected.norm());
}

TEST(RiemannianGradient, FiniteDifferencePolynomials) {
  NormalSampler rng(47);
  const ManifoldParams m = make_manifold(3, 1.0);
  Vec a(m.n + 1), b(m.n + 1);
  for (int i = 0; i <= m.n; ++i) {
    a[i] = rng.normal();
    b[i] = rng.normal();
  }
  auto f = [&](const HPoint& p) {
    const double s = a.dot(p.x), t = b.dot(p.x);
    return s * s * s + t * t;
  };
  auto fprime = [&](const HPoint& p) -> Vec {
    const double s = a.dot(p.x), t = b.dot(p.x);
    return 3.0 * s * s * a + 2.0 * t * b;
  };

  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    const HPoint p = random_point(m, rng, 1.5);
    const HTangent g = riemannian_gradient(m, p, fprime(p));
    const HTangent v = random_tangent(m, p, rng, 1.0);
    HTangent step = v;
    step.v *= h;
    HTangent back = v;
    back.v *= -h;
    const double fd = (f(exp_map(m, p, step)) - f(exp_map(m, p, back))) / (2.0 * h);
    const double an = lorentz_inner(g.v, v.v);
    EXPECT_LE(std::abs(fd - an), 1e-6 * std::max(1.0, std::abs(an)));
  }
}

TEST(Poincare, ApexNormBoundRoundTrip) {
  NormalSampler rng(53);
  for (double kappa : {0.25, 1.0, 4.0}) {
    const ManifoldParams m = make_manifold(2, kappa);
    const Vec at_apex = to_poincare(m, origin_point(m));
    EXPECT_LE(at_apex.norm(), 1e-15);
    for (int i = 0; i < 100; ++i) {
      const HPoint p = random_point(m, rng, 3.0);
      const Vec y = to_poincare(m, p);
      EXPECT_LT(y.norm(), 1.0 / std::sqrt(kappa));
      const HPoint back = from_poincare(m, y);
      // The rim denominator 1 - kappa|y|^2 loses digits as points move out.
      EXPECT_LE((back.x - p.x).norm(), 1e-10 * std::max(1.0, p.x.norm()));
    }
  }
}

}  // namespace
}  // namespace hyproj
