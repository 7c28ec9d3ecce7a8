#pragma once

#include <cmath>

#include "hyproj/geometry.hpp"
#include "hyproj/rng.hpp"

namespace hyproj::testutil {

inline HPoint origin_point(const ManifoldParams& m) {
  Vec x = Vec::Zero(m.n + 1);
  x[m.n] = 1.0 / std::sqrt(m.kappa);
  return make_hpoint(m, x);
}

inline HTangent random_tangent(const ManifoldParams& m, const HPoint& p, NormalSampler& rng,
                               double scale) {
  Vec a(m.n + 1);
  for (int i = 0; i <= m.n; ++i) a[i] = rng.normal();
  HTangent t = tangent_project(m, p, a);
  const double nrm = tangent_norm(m, t);
  if (nrm > 0.0) t.v *= scale / nrm;
  return t;
}

// Point at a uniformly drawn distance in [0, max_dist] from the vertex.
inline HPoint random_point(const ManifoldParams& m, NormalSampler& rng, double max_dist) {
  const HPoint o = origin_point(m);
  return exp_map(m, o, random_tangent(m, o, rng, max_dist * rng.uniform()));
}

}  // namespace hyproj::testutil
