#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "irl1/diagnostics.hpp"
#include "irl1/instance_gen.hpp"
#include "irl1/solver.hpp"

namespace irl1 {

struct ExperimentConfig {
  EnsembleProfile profile = EnsembleProfile::Small;
  int count = 50;
  /// Template for every cell; eps_strategy and eps0 are overridden per cell.
  SolverOptions solver;
  std::vector<EpsilonStrategy> strategies{EpsilonStrategy::SmartReweighting};
  std::vector<double> eps0_values{1.0};
  std::uint64_t base_seed = 0;
  double noise_std = kDefaultNoiseStd;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  int jobs = 0;
  /// Forwarded to SolverOptions::store_iterates for observers that need
  /// full iterates.
  bool store_iterates = false;

  void validate() const;
};

/// Default instance counts per profile for desk-scale runs.
int default_count(EnsembleProfile profile);

struct ExperimentRow {
  std::uint64_t seed = 0;
  EpsilonStrategy strategy = EpsilonStrategy::SmartReweighting;
  double eps0 = 1.0;
  SolveStatus status = SolveStatus::MaxIterations;
  int N = 0;
  int N_S = 0;
  double ratio = 0.0;
  double final_residual = 0.0;
  /// Exact equality of supp(x_true) and supp(x_final).
  bool support_correct = false;
};

inline constexpr double kHistogramBinWidth = 0.05;
inline constexpr int kHistogramBins = 20;

struct CellSummary {
  EpsilonStrategy strategy = EpsilonStrategy::SmartReweighting;
  double eps0 = 1.0;
  int runs = 0;
  int converged = 0;
  double success_rate = 0.0;
  int correct_support = 0;
  /// Converged runs with N_S / N <= 0.5.
  int stable_by_half = 0;
  /// Nearest-rank percentiles of N over converged runs (0 when none).
  int iterations_p50 = 0;
  int iterations_p90 = 0;
  int iterations_max = 0;
  /// Counts of N_S / N over converged runs, bins of width 0.05 on [0, 1].
  std::vector<int> ratio_histogram;
  /// solved_by_iteration[t] = converged runs with N <= t, t = 0..max_iter.
  std::vector<int> solved_by_iteration;
};

struct ExperimentReport {
  /// Ordered by (seed, strategy, eps0) following the config's list order.
  std::vector<ExperimentRow> rows;
  std::vector<CellSummary> cells;
};

/// Called once per (instance, cell) solve. Calls are serialized, but come
/// from worker threads in completion order.
using RunObserver = std::function<void(const RecoveryInstance&, const SolverOptions&,
                                       const SolveResult&)>;

/// Solves every instance of the ensemble under every (strategy, eps0) cell.
/// All cells of a seed see the same instance. Solver exceptions are recorded
/// as LineSearchFailure rows instead of aborting the batch.
ExperimentReport run_experiment(const ExperimentConfig& config,
                                const RunObserver& observer = {});

/// Aggregates rows into one summary per (strategy, eps0) cell.
std::vector<CellSummary> summarize(const std::vector<ExperimentRow>& rows,
                                   const ExperimentConfig& config);

std::string report_csv(const std::vector<ExperimentRow>& rows);
std::string summary_json(const ExperimentReport& report, const ExperimentConfig& config);
std::string histogram_csv(const std::vector<CellSummary>& cells);
std::string success_curve_csv(const std::vector<CellSummary>& cells);

/// Writes report.csv, summary.json, histogram.csv and success_curve.csv.
void write_experiment_outputs(const ExperimentReport& report, const ExperimentConfig& config,
                              const std::string& directory);

/// Two-dimensional demonstration problem
///   (x1 - c1)^2 + (x2 - c2)^2 + lambda * sum |x_i|^p
/// whose weighted-l1 surface is certified at the stationary point reached
/// from `anchor` with a small initial smoothing.
struct ContourConfig {
  double center_x1 = 0.5;
  double center_x2 = 5.0;
  double lambda = 0.1;
  double p = 0.5;
  std::pair<double, double> x_range{-1.0, 1.0};
  std::pair<double, double> y_range{-1.0, 6.0};
  int resolution = 400;
  Vector anchor = (Vector(2) << 0.0, 5.0).finished();
  double anchor_eps0 = 1e-4;
  double margin = kDefaultCertificateMargin;
  int jobs = 1;
};

struct ContourOutput {
  ContourGrid grid;
  /// Stationary point used for the certificate (empty when lambda == 0).
  Vector x_star;
  Vector weights;
  double kkt_violation = 0.0;
};

std::shared_ptr<const SmoothObjective> contour_objective(const ContourConfig& config);
ContourOutput run_contour(const ContourConfig& config);

/// `x,y,f_lp,f_wl1` rows, y-major.
std::string contour_csv(const ContourGrid& grid);
/// `x,y,f_l1` rows, y-major.
std::string contour_l1_csv(const ContourGrid& grid);

}  // namespace irl1
