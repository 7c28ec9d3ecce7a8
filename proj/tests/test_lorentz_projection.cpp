#include "hyproj/lorentz_projection.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hyproj/rng.hpp"

namespace hyproj {
namespace {

Vec randn_vec(NormalSampler& rng, int dim) {
  Vec x(dim);
  for (int i = 0; i < dim; ++i) x[i] = rng.normal();
  return x;
}

// deterministic point in the interior of the Lorentz cone
Vec interior_point(NormalSampler& rng, int dim, double spread = 0.7) {
  Vec p = randn_vec(rng, dim);
  Vec bar = p.head(dim - 1);
  p[dim - 1] = bar.norm() / spread + 0.1;
  return p;
}

// spacelike normal: only those cut L in a proper nontrivial wedge. A timelike
// normal leaves V+ intersect L either trivial or all of L, so the cap it
// bounds is degenerate and the nonzero projection does not exist.
Vec spacelike_normal(NormalSampler& rng, int dim) {
  Vec a = randn_vec(rng, dim);
  a[dim - 1] = (2.0 * rng.uniform() - 1.0) * 0.8 * a.head(dim - 1).norm();
  return a;
}

TEST(LProjectHyperplane, FixedPointsAndKnownKill) {
  NormalSampler rng(201);
  const int dim = 4;
  for (int i = 0; i < 30; ++i) {
    Vec a = randn_vec(rng, dim);
    if (std::abs(lorentz_inner(a, a)) < 0.3) continue;  // stay away from lightlike
    // points already on the hyperplane are fixed
    Vec y = randn_vec(rng, dim);
    y -= (a.dot(y) / a.squaredNorm()) * a;
    Vec py = l_project_hyperplane(a, y);
    EXPECT_LE((py - y).norm(), 1e-10 * std::max(1.0, y.norm()));
    // arbitrary input lands on the hyperplane
    const Vec z = 2.0 * randn_vec(rng, dim);
    const Vec pz = l_project_hyperplane(a, z);
    EXPECT_LE(std::abs(a.dot(pz)), 1e-10 * a.norm() * std::max(1.0, pz.norm()));
  }

  // a = e_dim: projection erases the last coordinate
  Vec a = Vec::Zero(3);
  a[2] = 1.0;
  Vec y(3);
  y << 0.3, -0.8, 2.0;
  const Vec p = l_project_hyperplane(a, y);
  EXPECT_NEAR(p[0], 0.3, 1e-15);
  EXPECT_NEAR(p[1], -0.8, 1e-15);
  EXPECT_NEAR(p[2], 0.0, 1e-15);

  Vec lightlike(3);
  lightlike << 1, 0, 1;
  EXPECT_THROW(l_project_hyperplane(lightlike, y), std::invalid_argument);
}

TEST(LProjectHalfspaceCone, ClosedFormCertified) {
  // feasible side: identity
  Vec a(3);
  a << 1, 0, 0;
  Vec p(3);
  p << 0.4, -0.2, 1.0;
  EXPECT_EQ(l_project_halfspace_cone(a, p), p);

  // infeasible side: the projection satisfies a^T u = 0 and the certificate
  p << -0.3, 0.4, std::sqrt(1.25);
  const Vec u = l_project_halfspace_cone(a, p);
  EXPECT_LE(std::abs(a.dot(u)), 1e-12);
  const ConeSpec cone = ConeSpec::halfspace_cone(a);
  const std::vector<Vec> samples = sample_cone_points(cone, 200, true);
  EXPECT_TRUE(is_l_projection(p, u, samples));

  NormalSampler rng(203);
  for (int i = 0; i < 30; ++i) {
    const Vec an = spacelike_normal(rng, 4);
    const ConeSpec cn = ConeSpec::halfspace_cone(an);
    const std::vector<Vec> zs = sample_cone_points(cn, 200, true);
    const Vec q = interior_point(rng, 4);
    const Vec uq = l_project_halfspace_cone(an, q);
    EXPECT_TRUE(is_l_projection(q, uq, zs));
  }
}

TEST(IsLProjection, AcceptsTruthRejectsPerturbation) {
  NormalSampler rng(207);
  const ConeSpec cone = ConeSpec::circular(4, 1.0);
  const std::vector<Vec> samples = sample_cone_points(cone, 200, true);
  const Vec p = interior_point(rng, 4);
  // u = p is the projection when p is in the cone's interior part of L
  if (cone.contains(p, 0.0)) {
    EXPECT_TRUE(is_l_projection(p, p, samples));
  }
  const LProjResult r = l_project_natural(cone, p);
  EXPECT_TRUE(is_l_projection(p, r.nonzero, samples));
  EXPECT_LE(l_projection_violation(p, r.nonzero, samples), 0.0 + 1e-8);

  Vec bad = r.nonzero;
  bad[0] += 0.05 * std::max(1.0, bad.norm());
  EXPECT_FALSE(is_l_projection(p, bad, samples));
  // scaling the nonzero element breaks complementarity
  EXPECT_FALSE(is_l_projection(p, Vec(1.3 * r.nonzero), samples));
}

TEST(LProjectNatural, AgreesWithHalfspaceClosedForm) {
  NormalSampler rng(211);
  for (int dim : {3, 5}) {
    for (int i = 0; i < 15; ++i) {
      const Vec a = spacelike_normal(rng, dim);
      const ConeSpec cone = ConeSpec::halfspace_cone(a);
      const Vec p = interior_point(rng, dim);
      const Vec closed = l_project_halfspace_cone(a, p);
      const LProjResult r = l_project_natural(cone, p);
      EXPECT_LE((r.nonzero - closed).norm(), 1e-9 * std::max(1.0, closed.norm()));
    }
  }
}

TEST(LProjectNatural, FixedPointInsideCone) {
  NormalSampler rng(213);
  const ConeSpec cone = ConeSpec::circular(4, 1.3);
  for (int i = 0; i < 20; ++i) {
    Vec p = randn_vec(rng, 4);
    p[3] = 1.3 * p.head(3).norm() / 0.8 + 0.2;  // strictly inside the circular cone
    const LProjResult r = l_project_natural(cone, p);
    EXPECT_LE((r.nonzero - p).norm(), 1e-9 * std::max(1.0, p.norm()));
    EXPECT_LE(std::abs(r.complementarity), 1e-8 * p.squaredNorm());
  }
}

TEST(LProjectNatural, PositiveHomogeneous) {
  NormalSampler rng(217);
  const ConeSpec orthant = ConeSpec::nonneg_orthant(4);
  const ConeSpec circ = ConeSpec::circular(4, 1.5);
  for (const ConeSpec* cone : {&orthant, &circ}) {
    for (int i = 0; i < 10; ++i) {
      const Vec p = interior_point(rng, 4);
      const LProjResult base = l_project_natural(*cone, p);
      for (double lam : {0.5, 2.0, 10.0}) {
        const LProjResult scaled = l_project_natural(*cone, Vec(lam * p));
        EXPECT_LE((scaled.nonzero - lam * base.nonzero).norm(),
                  1e-9 * std::max(1.0, lam * base.nonzero.norm()));
      }
    }
  }
}

TEST(LProjectNatural, BoundaryLocationPerKind) {
  NormalSampler rng(219);
  // outputs for infeasible inputs sit on the boundary facet that blocks them
  for (int i = 0; i < 20; ++i) {
    // orthant: some coordinate of u is zero when p has a negative coordinate
    Vec p = interior_point(rng, 4);
    p[0] = -std::abs(p[0]) - 0.1;
    const ConeSpec orthant = ConeSpec::nonneg_orthant(4);
    const LProjResult r = l_project_natural(orthant, p);
    EXPECT_LE(r.nonzero.minCoeff(), 1e-8 * std::max(1.0, r.nonzero.norm()));
    EXPECT_GE(r.nonzero.minCoeff(), -1e-8 * std::max(1.0, r.nonzero.norm()));
  }
  for (int i = 0; i < 20; ++i) {
    // circular cone: u lands on u_dim = alpha |u_bar|
    const double alpha = 1.4;
    const ConeSpec circ = ConeSpec::circular(4, alpha);
    Vec p = interior_point(rng, 4, 0.95);  // in L but outside the narrower cone
    if (circ.contains(p, 0.0)) continue;
    const LProjResult r = l_project_natural(circ, p);
    EXPECT_NEAR(r.nonzero[3], alpha * r.nonzero.head(3).norm(),
                1e-8 * std::max(1.0, r.nonzero.norm()));
  }
  for (int i = 0; i < 20; ++i) {
    // half-space cone: a^T u = 0 on the infeasible side
    Vec a = spacelike_normal(rng, 4);
    Vec p = interior_point(rng, 4);
    if (a.dot(p) >= 0.0) a = -a;
    const ConeSpec hs = ConeSpec::halfspace_cone(a);
    const LProjResult r = l_project_natural(hs, p);
    EXPECT_LE(std::abs(a.dot(r.nonzero)), 1e-8 * a.norm() * std::max(1.0, r.nonzero.norm()));
  }
}

TEST(LProjectNatural, RootUniqueAcrossBrackets) {
  NormalSampler rng(223);
  LProjOptions alt;
  alt.t_max_factor = 7.0;
  alt.grid = 97;
  for (int i = 0; i < 15; ++i) {
    const ConeSpec cone = ConeSpec::circular(5, 1.2);
    const Vec p = interior_point(rng, 5);
    const LProjResult r1 = l_project_natural(cone, p);
    const LProjResult r2 = l_project_natural(cone, p, alt);
    EXPECT_LE((r1.nonzero - r2.nonzero).norm(), 1e-8 * std::max(1.0, r1.nonzero.norm()));
    EXPECT_NEAR(r1.root, r2.root, 1e-8 * std::max(1.0, std::abs(r1.root)));
  }
}

TEST(LProjectNatural, ComplementaritySlacknessSampled) {
  NormalSampler rng(227);
  const ConeSpec cone = ConeSpec::nonneg_orthant(3);
  const std::vector<Vec> zs = sample_cone_points(cone, 300, true);
  for (int i = 0; i < 20; ++i) {
    const Vec p = interior_point(rng, 3);
    const LProjResult r = l_project_natural(cone, p);
    const Vec& u = r.nonzero;
    // <p - u, u> = 0 and <p - u, z> <= 0 for z in the spanned closure
    Vec j = p - u;
    j[2] = -j[2];  // J(p - u), so plain dots below are Lorentz inners
    EXPECT_LE(std::abs(j.dot(u)), 1e-8 * p.squaredNorm());
    for (const Vec& z : zs) {
      EXPECT_LE(j.dot(z), 1e-8 * std::max(1.0, p.norm()));
    }
  }
}

TEST(LProjectNatural, ReportsRootAndResidualFields) {
  NormalSampler rng(229);
  const ConeSpec cone = ConeSpec::circular(3, 1.0);
  const Vec p = interior_point(rng, 3);
  const LProjResult r = l_project_natural(cone, p);
  EXPECT_GT(r.root, 0.0);
  EXPECT_NEAR(r.nonzero[2], r.root, 1e-10 * std::max(1.0, r.root));
  EXPECT_LE(std::abs(r.complementarity), 1e-8 * p.squaredNorm());
  EXPECT_LE(r.max_feasibility, 1e-8 * std::max(1.0, p.norm()));
}

}  // namespace
}  // namespace hyproj
