#include "hyproj/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "hyproj/convex_sets.hpp"
#include "hyproj/rng.hpp"

namespace hyproj {

namespace {

namespace fs = std::filesystem;

// Number of accepted geodesic steps. The record written when a stop fires
// without moving (backtracking stationarity check, zero gradient) has step 0
// and does not count.
int accepted_steps(const SolverTrace& trace) {
  int n = static_cast<int>(trace.iters.size()) + trace.dropped;
  if (!trace.iters.empty() && trace.iters.back().step == 0.0) --n;
  return n;
}

std::string point_header(int dim) {
  static const char* first[] = {"x", "y", "z"};
  std::string h;
  for (int i = 0; i < dim; ++i) {
    if (i > 0) h += ',';
    if (i < 3) {
      h += first[i];
    } else {
      h += 'z';
      h += std::to_string(i);
    }
  }
  return h;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  return out;
}

void write_points_csv(const fs::path& path, const std::vector<Vec>& rows) {
  auto out = open_out(path);
  if (rows.empty()) throw std::invalid_argument("write_points_csv: no rows");
  out << point_header(static_cast<int>(rows.front().size())) << '\n';
  for (const Vec& r : rows) {
    for (int i = 0; i < r.size(); ++i) {
      if (i > 0) out << ',';
      out << format_full(r[i]);
    }
    out << '\n';
  }
}

void write_cost_csv(const fs::path& path, const std::vector<std::pair<int, double>>& rows) {
  auto out = open_out(path);
  out << "i,c\n";
  for (const auto& [i, c] : rows) out << i << ',' << format_full(c) << '\n';
}

std::vector<std::pair<int, double>> cost_rows(const SolverTrace& trace, double final_cost) {
  std::vector<std::pair<int, double>> rows;
  rows.reserve(trace.iters.size() + 1);
  for (const IterRecord& rec : trace.iters) rows.emplace_back(rec.k, rec.cost);
  // the stopping record of a backtracking run is already the final iterate
  if (!trace.iters.empty() && trace.iters.back().step != 0.0) {
    rows.emplace_back(trace.iters.back().k + 1, final_cost);
  }
  return rows;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

int resolve_threads(int requested, std::size_t jobs) {
  int t = requested;
  if (t <= 0) {
    if (const char* env = std::getenv("HYPROJ_THREADS")) t = std::atoi(env);
  }
  if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
  if (t <= 0) t = 1;
  return static_cast<int>(std::min<std::size_t>(t, jobs));
}

}  // namespace

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string atom = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (atom.empty()) throw std::invalid_argument("parse_dims: empty entry in '" + text + "'");
    int a = 0, b = 0, s = 1;
    const int got = std::sscanf(atom.c_str(), "%d:%d:%d", &a, &b, &s);
    if (got < 1) throw std::invalid_argument("parse_dims: cannot parse '" + atom + "'");
    if (got == 1) b = a;
    if (s < 1 || b < a) throw std::invalid_argument("parse_dims: bad range '" + atom + "'");
    for (int d = a; d <= b; d += s) dims.push_back(d);
  }
  return dims;
}

Mean2dResult run_mean2d(const Mean2dConfig& cfg) {
  if (cfg.n_points < 1) throw std::invalid_argument("run_mean2d: need at least one point");
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("run_mean2d: eps must be positive");
  if (!(cfg.radius > 0.0)) throw std::invalid_argument("run_mean2d: radius must be positive");
  if (cfg.solver != "constant" && cfg.solver != "backtracking") {
    throw std::invalid_argument("run_mean2d: solver must be 'constant' or 'backtracking'");
  }

  const ManifoldParams m = make_manifold(2, 1.0);
  Vec origin(3);
  origin << 0.0, 0.0, 1.0;
  const HPoint p0 = make_hpoint(m, origin);

  auto anchors = generate_experiment_2d(cfg.seed, cfg.n_points, cfg.noise, cfg.offset);
  const auto prob = make_fermat_weber(m, anchors, 2.0);
  const Objective obj = fw_objective(prob);

  // Unconstrained mean: same solver over an effectively unbounded ball. 3e-7
  // is near the floor for this stop rule: the Armijo test needs a decrease of
  // order rho * stationarity^2, and below ~1e-7 that falls under the roundoff
  // of a 200-term cost sum, leaving the line search nothing to measure.
  BacktrackConfig mean_cfg;
  mean_cfg.stop_tol = 3e-7;
  mean_cfg.max_iters = 2000;
  const SolverResult mean_run =
      pga_backtracking(obj, ConvexSetSpec::ball(m, p0, 1e6), p0, mean_cfg);

  const auto C = ConvexSetSpec::ball(m, p0, cfg.radius);

  Mean2dResult res;
  res.mean = mean_run.point;
  res.projected_mean = project(C, res.mean);
  res.mean_inside = distance(m, res.mean, p0) <= cfg.radius;

  SolverResult run = [&] {
    if (cfg.solver == "constant") {
      const double L = fw_lipschitz_bound(prob, p0, cfg.radius);
      ConstantStepConfig sc;
      sc.alpha = 0.9 / L;
      sc.max_iters = cfg.max_iters;
      sc.stop_tol = cfg.eps;
      return pga_constant(fw_objective(prob, L), C, p0, sc);
    }
    BacktrackConfig bc;
    bc.stop_tol = cfg.eps;
    bc.max_iters = cfg.max_iters;
    return pga_backtracking(obj, C, p0, bc);
  }();

  res.minimizer = run.point;
  res.iterations = accepted_steps(run.trace);
  res.final_cost = fw_cost(prob, res.minimizer);
  res.final_stationarity = stationarity_measure(obj, C, res.minimizer, 1.0);
  res.dist_minimizer_to_projected_mean = distance(m, res.minimizer, res.projected_mean);
  res.converged = run.trace.reason != StopReason::MaxIters;
  res.trace = std::move(run.trace);

  if (!cfg.out_dir.empty()) {
    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);

    std::vector<Vec> pts, pts_disk;
    pts.reserve(anchors.size());
    pts_disk.reserve(anchors.size());
    for (const HPoint& q : anchors) {
      pts.push_back(q.x);
      pts_disk.push_back(to_poincare(m, q));
    }
    write_points_csv(dir / "points.csv", pts);
    write_points_csv(dir / "points_poincare.csv", pts_disk);

    const std::vector<std::pair<const char*, const HPoint*>> singles = {
        {"mean", &res.mean},
        {"projected_mean", &res.projected_mean},
        {"pga_result", &res.minimizer},
    };
    for (const auto& [name, pt] : singles) {
      write_points_csv(dir / (std::string(name) + ".csv"), {pt->x});
      write_points_csv(dir / (std::string(name) + "_poincare.csv"), {to_poincare(m, *pt)});
    }
    write_cost_csv(dir / "cost_trace.csv", cost_rows(res.trace, res.final_cost));
  }
  return res;
}

MeanNdResult run_mean_nd(const MeanNdConfig& cfg) {
  if (cfg.d < 2 || cfg.d > 200) throw std::invalid_argument("run_mean_nd: d must lie in [2, 200]");
  if (cfg.n_points < 1) throw std::invalid_argument("run_mean_nd: need at least one point");
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("run_mean_nd: eps must be positive");

  MeanNdResult res;
  res.data = generate_experiment_nd(cfg.seed, cfg.d, cfg.n_points);
  const NdExperiment& ex = res.data;
  const auto prob = make_fermat_weber(ex.m, ex.points, 2.0);
  const Objective obj = fw_objective(prob);
  const auto C = ConvexSetSpec::ball(ex.m, ex.p0, ex.radius);

  BacktrackConfig bc;
  bc.stop_tol = cfg.eps;
  bc.max_iters = cfg.max_iters;
  SolverResult run = pga_backtracking(obj, C, ex.p0, bc);

  res.minimizer = run.point;
  res.iterations = accepted_steps(run.trace);
  res.final_cost = fw_cost(prob, res.minimizer);
  res.final_stationarity = stationarity_measure(obj, C, res.minimizer, 1.0);
  res.feasible = contains(C, res.minimizer, 1e-9);
  res.converged = run.trace.reason != StopReason::MaxIters;
  res.trace = std::move(run.trace);

  if (!cfg.out_dir.empty()) {
    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    std::vector<Vec> pts;
    pts.reserve(ex.points.size());
    for (const HPoint& q : ex.points) pts.push_back(q.x);
    write_points_csv(dir / "points.csv", pts);
    write_points_csv(dir / "pga_result.csv", {res.minimizer.x});
    write_cost_csv(dir / "cost_trace.csv", cost_rows(res.trace, res.final_cost));
  }
  return res;
}

namespace {

SweepRow sweep_one(const SweepConfig& cfg, int d, int repeats) {
  SweepRow row;
  row.d = d;
  try {
    const NdExperiment ex = generate_experiment_nd(cfg.seed, d, cfg.n_points);
    const auto prob = make_fermat_weber(ex.m, ex.points, 2.0);
    const Objective obj = fw_objective(prob);
    const auto C = ConvexSetSpec::ball(ex.m, ex.p0, ex.radius);

    BacktrackConfig bc;
    bc.stop_tol = cfg.eps;
    bc.max_iters = 400;

    SolverResult run;
    std::vector<double> times;
    times.reserve(repeats);
    for (int r = 0; r < repeats; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      SolverResult out = pga_backtracking(obj, C, ex.p0, bc);
      const auto t1 = std::chrono::steady_clock::now();
      times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
      if (r == 0) run = std::move(out);
    }

    row.iters = accepted_steps(run.trace);
    row.time_ms = median(std::move(times));
    row.cost = fw_cost(prob, run.point);
    row.stat = stationarity_measure(obj, C, run.point, 1.0);
    row.feasible = contains(C, run.point, 1e-9);
    row.ok = run.trace.reason != StopReason::MaxIters;
  } catch (const std::exception&) {
    row.iters = -1;
    row.time_ms = 0.0;
    row.cost = std::numeric_limits<double>::quiet_NaN();
    row.stat = std::numeric_limits<double>::quiet_NaN();
    row.ok = false;
    row.feasible = false;
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.dims.empty()) throw std::invalid_argument("run_sweep: dims must be nonempty");
  for (int d : cfg.dims) {
    if (d < 2 || d > 200) throw std::invalid_argument("run_sweep: dims must lie in [2, 200]");
  }
  if (cfg.n_points < 1) throw std::invalid_argument("run_sweep: need at least one point");
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("run_sweep: eps must be positive");
  const int repeats = std::max(1, cfg.repeats);

  std::vector<SweepRow> rows(cfg.dims.size());
  const int threads = resolve_threads(cfg.max_threads, cfg.dims.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < cfg.dims.size(); ++i) rows[i] = sweep_one(cfg, cfg.dims[i], repeats);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < cfg.dims.size(); i = next++) {
        rows[i] = sweep_one(cfg, cfg.dims[i], repeats);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (!cfg.out_dir.empty()) {
    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    auto out = open_out(dir / "sweep.csv");
    out << "d,iters,time_ms,cost,stat\n";
    for (const SweepRow& r : rows) {
      out << r.d << ',' << r.iters << ',' << format_full(r.time_ms) << ','
          << format_full(r.cost) << ',' << format_full(r.stat) << '\n';
    }
  }
  return rows;
}

bool run_project_test(std::uint64_t seed, std::ostream& log) {
  const ManifoldParams m = make_manifold(2, 1.0);
  Vec origin(3);
  origin << 0.0, 0.0, 1.0;
  const HPoint p0 = make_hpoint(m, origin);

  Vec off(3);
  off << 0.3, -0.2, 0.0;
  const HPoint ball_center = exp_map(m, p0, make_htangent(m, p0, off));
  Mat gens(3, 2);
  gens << 1.0, -0.3, 0.2, 1.0, 0.0, 0.0;
  Vec normal(3);
  normal << 1.0, 0.5, 0.3;

  struct Variant {
    const char* name;
    ConvexSetSpec set;
  };
  const std::vector<Variant> variants = {
      {"ball", ConvexSetSpec::ball(m, ball_center, 0.8)},
      {"orthant-cap", ConvexSetSpec::orthant_cap(m)},
      {"simplicial-cap", ConvexSetSpec::simplicial_cap(m, gens)},
      {"circular-cap", ConvexSetSpec::circular_cap(m, 2.0)},
      {"halfspace-cap", ConvexSetSpec::halfspace_cap(m, normal)},
  };

  NormalSampler rng(seed);
  auto random_point = [&] {
    Vec v(3);
    v << 1.1 * rng.normal(), 1.1 * rng.normal(), 0.0;
    return exp_map(m, p0, make_htangent(m, p0, v));
  };

  bool all_ok = true;
  auto report = [&](const std::string& name, double value, double bound) {
    const bool ok = value <= bound;
    all_ok = all_ok && ok;
    log << (ok ? "[ok]   " : "[FAIL] ") << name << ": max " << format_full(value)
        << " (bound " << format_full(bound) << ")\n";
  };

  constexpr int kOraclePoints = 40;
  constexpr int kResolution = 300;
  constexpr int kCertPoints = 10;
  constexpr int kCertSamples = 1000;
  constexpr int kCrossPoints = 25;

  for (const Variant& var : variants) {
    double worst_ratio = 0.0;
    for (int i = 0; i < kOraclePoints; ++i) {
      const HPoint p = random_point();
      const HPoint q = project(var.set, p);
      const HPoint qb = brute_force_intrinsic(var.set, p, kResolution);
      const double pitch = brute_force_pitch(var.set, qb, kResolution);
      worst_ratio = std::max(worst_ratio, distance(m, q, qb) / (2.0 * pitch));
    }
    report(std::string(var.name) + " oracle gap / (2 pitch)", worst_ratio, 1.0);

    double worst_cert = 0.0;
    for (int i = 0; i < kCertPoints; ++i) {
      const HPoint p = random_point();
      const auto rep = certify_projection(var.set, p, project(var.set, p), kCertSamples);
      worst_cert = std::max(worst_cert, rep.max_violation);
    }
    report(std::string(var.name) + " variational certificate", worst_cert, 1e-8);

    if (var.set.kind() != ConvexSetSpec::Kind::Ball) {
      double worst_gap = 0.0, worst_conv = 0.0;
      for (int i = 0; i < kCrossPoints; ++i) {
        const HPoint p = random_point();
        const auto cc = cross_check_via_lorentz(var.set, p);
        worst_gap = std::max(worst_gap, distance(m, cc.point, project(var.set, p)));
        worst_conv = std::max(worst_conv, cc.converse_residual);
      }
      report(std::string(var.name) + " Lorentz cross-check gap", worst_gap, 1e-9);
      report(std::string(var.name) + " converse certificate", worst_conv, 1e-8);
    }
  }

  log << (all_ok ? "all projection checks passed\n" : "projection checks FAILED\n");
  return all_ok;
}

}  // namespace hyproj
