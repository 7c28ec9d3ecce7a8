#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hyproj/experiments.hpp"

namespace {

void print_trace_tail(const hyproj::SolverTrace& trace) {
  const auto& iters = trace.iters;
  const std::size_t from = iters.size() > 8 ? iters.size() - 8 : 0;
  for (std::size_t i = from; i < iters.size(); ++i) {
    const auto& r = iters[i];
    std::cout << "  k=" << r.k << "  f=" << hyproj::format_full(r.cost)
              << "  d(p,z)=" << hyproj::format_full(r.stationarity) << "  step=" << r.step
              << "\n";
  }
}

int cmd_mean2d(const hyproj::Mean2dConfig& cfg) {
  const auto res = hyproj::run_mean2d(cfg);
  std::cout << "anchors: " << cfg.n_points << ", seed " << cfg.seed << ", solver " << cfg.solver
            << "\n";
  std::cout << "unconstrained mean " << (res.mean_inside ? "inside" : "outside")
            << " the ball (radius " << cfg.radius << ")\n";
  std::cout << "iterations: " << res.iterations << "\n";
  std::cout << "final cost: " << hyproj::format_full(res.final_cost) << "\n";
  std::cout << "final stationarity: " << hyproj::format_full(res.final_stationarity) << "\n";
  std::cout << "d(result, projected mean): "
            << hyproj::format_full(res.dist_minimizer_to_projected_mean) << "\n";
  print_trace_tail(res.trace);
  if (!cfg.out_dir.empty()) std::cout << "CSV written to " << cfg.out_dir << "\n";
  if (!res.converged) {
    std::cerr << "did not reach the stopping tolerance within " << cfg.max_iters
              << " iterations\n";
    return 1;
  }
  return 0;
}

int cmd_mean_nd(const hyproj::MeanNdConfig& cfg) {
  const auto res = hyproj::run_mean_nd(cfg);
  std::cout << "d=" << cfg.d << ", anchors " << cfg.n_points << ", seed " << cfg.seed << "\n";
  std::cout << "ball radius: " << hyproj::format_full(res.data.radius) << "\n";
  std::cout << "iterations: " << res.iterations << "\n";
  std::cout << "final cost: " << hyproj::format_full(res.final_cost) << "\n";
  std::cout << "final stationarity: " << hyproj::format_full(res.final_stationarity) << "\n";
  std::cout << "feasible: " << (res.feasible ? "yes" : "no") << "\n";
  if (!cfg.out_dir.empty()) std::cout << "CSV written to " << cfg.out_dir << "\n";
  return res.converged && res.feasible ? 0 : 1;
}

int cmd_sweep(const hyproj::SweepConfig& cfg) {
  const auto rows = hyproj::run_sweep(cfg);
  std::cout << "d,iters,time_ms,cost,stat\n";
  bool ok = true;
  for (const auto& r : rows) {
    std::cout << r.d << ',' << r.iters << ',' << hyproj::format_full(r.time_ms) << ','
              << hyproj::format_full(r.cost) << ',' << hyproj::format_full(r.stat) << '\n';
    ok = ok && r.ok && r.feasible;
  }
  if (!cfg.out_dir.empty()) std::cout << "CSV written to " << cfg.out_dir << "\n";
  if (!ok) std::cerr << "at least one dimension failed\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperboloid projections and projected-gradient experiments"};
  app.require_subcommand(1);

  hyproj::Mean2dConfig m2;
  auto* mean2d = app.add_subcommand("mean2d", "planar constrained Fermat-Weber mean");
  mean2d->add_option("--seed", m2.seed, "RNG seed");
  mean2d->add_option("--n", m2.n_points, "number of anchors");
  mean2d->add_option("--radius", m2.radius, "constraint ball radius");
  mean2d->add_option("--offset", m2.offset, "anchor offset");
  mean2d->add_option("--noise", m2.noise, "anchor noise scale");
  mean2d->add_option("--eps", m2.eps, "stopping tolerance");
  mean2d->add_option("--solver", m2.solver, "constant | backtracking")
      ->check(CLI::IsMember({"constant", "backtracking"}));
  mean2d->add_option("--max-iters", m2.max_iters, "iteration cap");
  mean2d->add_option("--out", m2.out_dir, "CSV output directory");

  hyproj::MeanNdConfig mnd;
  auto* meannd = app.add_subcommand("mean-nd", "scaled higher-dimensional mean");
  meannd->add_option("--d", mnd.d, "manifold dimension")->check(CLI::Range(2, 200));
  meannd->add_option("--seed", mnd.seed, "RNG seed");
  meannd->add_option("--n", mnd.n_points, "number of anchors");
  meannd->add_option("--eps", mnd.eps, "stopping tolerance");
  meannd->add_option("--max-iters", mnd.max_iters, "iteration cap");
  meannd->add_option("--out", mnd.out_dir, "CSV output directory");

  hyproj::SweepConfig sw;
  std::string dims_text = "2,10,50,100,200";
  auto* sweep = app.add_subcommand("sweep", "dimension sweep of the scaled mean problem");
  sweep->add_option("--dims", dims_text, "dimensions, e.g. 2,10,50 or 2:200 or 2:200:10");
  sweep->add_option("--seed", sw.seed, "RNG seed");
  sweep->add_option("--n", sw.n_points, "number of anchors");
  sweep->add_option("--eps", sw.eps, "stopping tolerance");
  sweep->add_option("--repeats", sw.repeats, "timing repetitions (median reported)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--threads", sw.max_threads, "parallel dimensions (0: HYPROJ_THREADS, then hardware)");
  sweep->add_option("--out", sw.out_dir, "CSV output directory");

  std::uint64_t pt_seed = 42;
  auto* ptest = app.add_subcommand("project-test", "projection operator self-tests");
  ptest->add_option("--seed", pt_seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (mean2d->parsed()) return cmd_mean2d(m2);
    if (meannd->parsed()) return cmd_mean_nd(mnd);
    if (sweep->parsed()) {
      sw.dims = hyproj::parse_dims(dims_text);
      return cmd_sweep(sw);
    }
    if (ptest->parsed()) return hyproj::run_project_test(pt_seed, std::cout) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
