#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hyproj/fermat_weber.hpp"
#include "hyproj/solvers.hpp"

namespace hyproj {

// Planar constrained-mean experiment: anchors from generate_experiment_2d, the
// constraint set the geodesic ball of the given radius around p0 = (0,0,1), and
// the Fermat-Weber cost with sigma = 2.
struct Mean2dConfig {
  std::uint64_t seed = 42;
  int n_points = 200;
  double radius = 1.0;
  double offset = 1.5;
  double noise = 1.5;
  double eps = 1e-7;
  std::string solver = "backtracking";  // or "constant"
  int max_iters = 400;
  std::string out_dir;  // empty skips CSV output
};

struct Mean2dResult {
  HPoint mean;            // unconstrained minimizer
  HPoint projected_mean;  // ball projection of the mean
  HPoint minimizer;       // constrained solver output
  SolverTrace trace;
  int iterations = 0;
  double final_cost = 0.0;
  double final_stationarity = 0.0;
  double dist_minimizer_to_projected_mean = 0.0;
  bool mean_inside = false;
  bool converged = false;
};

Mean2dResult run_mean2d(const Mean2dConfig& cfg);

// Higher-dimensional single run with the scaled schedule (radius 1/sqrt(d) etc.).
struct MeanNdConfig {
  std::uint64_t seed = 42;
  int d = 10;
  int n_points = 400;
  double eps = 1e-7;
  int max_iters = 400;
  std::string out_dir;
};

struct MeanNdResult {
  NdExperiment data;
  HPoint minimizer;
  SolverTrace trace;
  int iterations = 0;
  double final_cost = 0.0;
  double final_stationarity = 0.0;
  bool feasible = false;
  bool converged = false;
};

MeanNdResult run_mean_nd(const MeanNdConfig& cfg);

struct SweepConfig {
  std::uint64_t seed = 42;
  std::vector<int> dims;
  int n_points = 400;
  double eps = 1e-7;
  int repeats = 3;      // timing repetitions; the median lands in the CSV
  int max_threads = 0;  // 0 reads HYPROJ_THREADS, then hardware_concurrency
  std::string out_dir;
};

struct SweepRow {
  int d = 0;
  int iters = -1;
  double time_ms = 0.0;
  double cost = 0.0;
  double stat = 0.0;
  bool ok = false;
  bool feasible = false;
};

std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

// Projection self-test battery driven by the CLI: per-variant closed form versus
// grid oracle, certificates, and the Lorentz cross-checks. Prints one line per
// check to `log`; returns true when everything stays below tolerance.
bool run_project_test(std::uint64_t seed, std::ostream& log);

// "a:b" expands to the inclusive range, "a:b:s" with stride s; comma-separated
// atoms combine, e.g. "2,8:10" -> {2,8,9,10}.
std::vector<int> parse_dims(const std::string& text);

// 17 significant digits, enough to round-trip doubles exactly.
std::string format_full(double v);

}  // namespace hyproj
