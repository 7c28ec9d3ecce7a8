#include "hyproj/lorentz_projection.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace hyproj {

namespace {

Vec apply_j(const Vec& x) {
  Vec y = x;
  y[y.size() - 1] = -y[y.size() - 1];
  return y;
}

}  // namespace

double l_projection_violation(const Vec& p, const Vec& u, const std::vector<Vec>& samples) {
  const Vec r = p - u;
  const double comp = std::abs(lorentz_inner(r, u)) / std::max(1.0, p.squaredNorm());
  double feas = 0.0;
  for (const Vec& z : samples) {
    feas = std::max(feas, lorentz_inner(r, z) / std::max(1.0, p.norm()));
  }
  return std::max(comp, feas);
}

bool is_l_projection(const Vec& p, const Vec& u, const std::vector<Vec>& samples, double tol) {
  if (p.size() != u.size()) throw std::invalid_argument("is_l_projection: size mismatch");
  return l_projection_violation(p, u, samples) <= tol;
}

Vec l_project_hyperplane(const Vec& a, const Vec& y) {
  if (a.size() != y.size()) throw std::invalid_argument("l_project_hyperplane: size mismatch");
  const double aa = lorentz_inner(a, a);
  if (std::abs(aa) <= kTolZero * a.squaredNorm()) {
    throw std::invalid_argument("l_project_hyperplane: lightlike normal");
  }
  const Vec ja = apply_j(a);
  return y - (lorentz_inner(y, ja) / aa) * ja;
}

Vec l_project_halfspace_cone(const Vec& a, const Vec& p) {
  if (a.size() != p.size()) throw std::invalid_argument("l_project_halfspace_cone: size mismatch");
  const Eigen::Index n = p.size() - 1;
  if (!(lorentz_inner(p, p) < 0.0) || !(p[n] > 0.0)) {
    throw std::invalid_argument("l_project_halfspace_cone: p must lie in the interior of L");
  }
  if (a.dot(p) >= 0.0) return p;  // p already in the cone
  return l_project_hyperplane(a, p);
}

LProjResult l_project_natural(const ConeSpec& cone, const Vec& p, const LProjOptions& opts) {
  const Eigen::Index n = p.size() - 1;
  if (cone.dim() != p.size()) throw std::invalid_argument("l_project_natural: size mismatch");
  if (!(lorentz_inner(p, p) < 0.0) || !(p[n] > 0.0)) {
    throw std::invalid_argument("l_project_natural: p must lie in the interior of L");
  }

  const Vec jp = apply_j(p);
  auto project_at = [&](double t) {
    Vec arg = jp;
    arg[n] += 2.0 * t;
    return project_spanned_closure(cone, arg, opts.closure_tol);
  };
  auto h = [&](double t) { return project_at(t)[n] - t; };

  const std::vector<Vec> samples = sample_cone_points(cone, opts.samples, true);

  // Scan a geometric grid for sign changes of h; t = 0 is always a root and is skipped.
  auto scan = [&](double lo, double hi) {
    std::vector<std::pair<double, double>> brackets;
    double prev_t = lo;
    double prev_h = h(lo);
    for (int k = 1; k <= opts.grid; ++k) {
      const double t = lo * std::pow(hi / lo, static_cast<double>(k) / opts.grid);
      const double ht = h(t);
      if ((prev_h < 0.0 && ht >= 0.0) || (prev_h > 0.0 && ht <= 0.0)) {
        brackets.emplace_back(prev_t, t);
      }
      prev_t = t;
      prev_h = ht;
    }
    return brackets;
  };

  double lo = opts.t_min;
  double hi = opts.t_max_factor * p[n];
  std::vector<std::pair<double, double>> brackets = scan(lo, hi);
  for (int widen = 0; widen < 2 && brackets.empty(); ++widen) {
    hi *= 10.0;
    lo *= 0.1;
    brackets = scan(lo, hi);
  }
  if (brackets.empty()) {
    throw ConvergenceError("l_project_natural: no sign change in the scanned bracket");
  }

  std::optional<LProjResult> best;
  for (auto [a, b] : brackets) {
    double ha = h(a);
    for (int it = 0; it < opts.bisect_iters; ++it) {
      const double mid = 0.5 * (a + b);
      const double hm = h(mid);
      if ((ha < 0.0) == (hm < 0.0)) {
        a = mid;
        ha = hm;
      } else {
        b = mid;
      }
    }
    const double t = 0.5 * (a + b);
    Vec u = project_at(t);
    if (u[n] <= opts.t_min) continue;  // collapsed onto the trivial root
    LProjResult r;
    r.nonzero = u;
    r.root = t;
    r.complementarity = lorentz_inner(p - u, u);
    r.max_feasibility = 0.0;
    for (const Vec& z : samples) {
      r.max_feasibility = std::max(r.max_feasibility, lorentz_inner(p - u, z));
    }
    if (!best || l_projection_violation(p, u, samples) <
                     l_projection_violation(p, best->nonzero, samples)) {
      best = std::move(r);
    }
  }
  if (!best) {
    throw ConvergenceError("l_project_natural: every candidate collapsed onto the trivial root");
  }
  return *best;
}

}  // namespace hyproj
