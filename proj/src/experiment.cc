#include "irl1/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "irl1/serialization.hpp"

namespace irl1 {
namespace {

bool same_support(const Vector& a, const Vector& b) {
  for (Index i = 0; i < a.size(); ++i) {
    if ((a[i] != 0.0) != (b[i] != 0.0)) return false;
  }
  return true;
}

int nearest_rank(std::vector<int> values, double q) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

int histogram_bin(double ratio) {
  const auto bin = static_cast<int>(std::floor(ratio / kHistogramBinWidth));
  return std::clamp(bin, 0, kHistogramBins - 1);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (count < 1) throw std::invalid_argument("experiment: count must be positive");
  if (strategies.empty()) throw std::invalid_argument("experiment: no strategies given");
  if (eps0_values.empty()) throw std::invalid_argument("experiment: no eps0 values given");
  if (jobs < 0) throw std::invalid_argument("experiment: jobs must be nonnegative");
  for (double eps0 : eps0_values) {
    if (!(eps0 > 0.0)) throw std::invalid_argument("experiment: eps0 must be positive");
  }
  solver.validate();
}

int default_count(EnsembleProfile profile) {
  return profile == EnsembleProfile::Small ? 50 : 10;
}

ExperimentReport run_experiment(const ExperimentConfig& config, const RunObserver& observer) {
  config.validate();
  const ProfileShape shape = profile_shape(config.profile);
  const std::size_t cells = config.strategies.size() * config.eps0_values.size();
  const auto count = static_cast<std::size_t>(config.count);

  ExperimentReport report;
  report.rows.resize(count * cells);
  std::mutex observer_mutex;
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (std::size_t j = next++; j < count; j = next++) {
      const std::uint64_t seed = config.base_seed + j;
      const RecoveryInstance instance =
          generate_instance(shape.m, shape.n, shape.K, seed, config.noise_std);
      const LpProblem problem(make_objective(instance), config.solver.lambda, config.solver.p);
      std::size_t slot = j * cells;
      for (EpsilonStrategy strategy : config.strategies) {
        for (double eps0 : config.eps0_values) {
          SolverOptions options = config.solver;
          options.eps_strategy = strategy;
          options.eps0 = eps0;
          options.store_iterates = config.store_iterates;

          ExperimentRow& row = report.rows[slot++];
          row.seed = seed;
          row.strategy = strategy;
          row.eps0 = eps0;
          try {
            const SolveResult result = solve(problem, options);
            row.status = result.status;
            row.N = result.iterations;
            row.N_S = result.support_stable_at;
            row.ratio = result.iterations > 0
                            ? static_cast<double>(result.support_stable_at) / result.iterations
                            : 0.0;
            row.final_residual = result.final_residual;
            row.support_correct = same_support(instance.x_true, result.final_x);
            if (observer) {
              std::lock_guard lock(observer_mutex);
              observer(instance, options, result);
            }
          } catch (const std::exception&) {
            row.status = SolveStatus::LineSearchFailure;
            row.final_residual = std::numeric_limits<double>::quiet_NaN();
          }
        }
      }
    }
  };

  int jobs = config.jobs > 0 ? config.jobs
                             : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min<int>(jobs, config.count);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  report.cells = summarize(report.rows, config);
  return report;
}

std::vector<CellSummary> summarize(const std::vector<ExperimentRow>& rows,
                                   const ExperimentConfig& config) {
  std::vector<CellSummary> out;
  for (EpsilonStrategy strategy : config.strategies) {
    for (double eps0 : config.eps0_values) {
      CellSummary cell;
      cell.strategy = strategy;
      cell.eps0 = eps0;
      cell.ratio_histogram.assign(kHistogramBins, 0);
      cell.solved_by_iteration.assign(static_cast<std::size_t>(config.solver.max_iter) + 1, 0);
      std::vector<int> iterations;
      for (const auto& row : rows) {
        if (row.strategy != strategy || row.eps0 != eps0) continue;
        ++cell.runs;
        if (row.support_correct) ++cell.correct_support;
        if (row.status != SolveStatus::Converged) continue;
        ++cell.converged;
        iterations.push_back(row.N);
        if (row.ratio <= 0.5) ++cell.stable_by_half;
        ++cell.ratio_histogram[static_cast<std::size_t>(histogram_bin(row.ratio))];
        for (std::size_t t = static_cast<std::size_t>(row.N); t < cell.solved_by_iteration.size(); ++t) {
          ++cell.solved_by_iteration[t];
        }
      }
      cell.success_rate = cell.runs > 0 ? static_cast<double>(cell.converged) / cell.runs : 0.0;
      cell.iterations_p50 = nearest_rank(iterations, 0.5);
      cell.iterations_p90 = nearest_rank(iterations, 0.9);
      cell.iterations_max = iterations.empty() ? 0 : *std::max_element(iterations.begin(), iterations.end());
      out.push_back(std::move(cell));
    }
  }
  return out;
}

std::string report_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = "seed,strategy,eps0,status,N,N_S,ratio,final_residual,support_correct\n";
  for (const auto& row : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", row.seed, to_string(row.strategy),
                       format_double(row.eps0), to_string(row.status), row.N, row.N_S,
                       format_double(row.ratio), format_double(row.final_residual),
                       row.support_correct ? 1 : 0);
  }
  return out;
}

std::string summary_json(const ExperimentReport& report, const ExperimentConfig& config) {
  std::string out = fmt::format(
      "{{\"profile\":\"{}\",\"count\":{},\"base_seed\":{},\"max_iter\":{},\"opttol\":{},"
      "\"rows\":{},\"cells\":[",
      to_string(config.profile), config.count, config.base_seed, config.solver.max_iter,
      format_double(config.solver.opttol), report.rows.size());
  for (std::size_t c = 0; c < report.cells.size(); ++c) {
    const CellSummary& cell = report.cells[c];
    if (c > 0) out += ',';
    out += fmt::format(
        "{{\"strategy\":\"{}\",\"eps0\":{},\"runs\":{},\"converged\":{},\"success_rate\":{},"
        "\"correct_support\":{},\"stable_by_half\":{},\"iterations_p50\":{},"
        "\"iterations_p90\":{},\"iterations_max\":{}}}",
        to_string(cell.strategy), format_double(cell.eps0), cell.runs, cell.converged,
        format_double(cell.success_rate), cell.correct_support, cell.stable_by_half,
        cell.iterations_p50, cell.iterations_p90, cell.iterations_max);
  }
  out += "]}";
  return out;
}

std::string histogram_csv(const std::vector<CellSummary>& cells) {
  std::string out = "strategy,eps0,bin_lo,bin_hi,count\n";
  for (const auto& cell : cells) {
    for (int b = 0; b < kHistogramBins; ++b) {
      out += fmt::format("{},{},{},{},{}\n", to_string(cell.strategy), format_double(cell.eps0),
                         format_double(b * kHistogramBinWidth),
                         format_double((b + 1) * kHistogramBinWidth),
                         cell.ratio_histogram[static_cast<std::size_t>(b)]);
    }
  }
  return out;
}

std::string success_curve_csv(const std::vector<CellSummary>& cells) {
  std::string out = "strategy,eps0,iteration,solved\n";
  for (const auto& cell : cells) {
    for (std::size_t t = 0; t < cell.solved_by_iteration.size(); ++t) {
      out += fmt::format("{},{},{},{}\n", to_string(cell.strategy), format_double(cell.eps0), t,
                         cell.solved_by_iteration[t]);
    }
  }
  return out;
}

void write_experiment_outputs(const ExperimentReport& report, const ExperimentConfig& config,
                              const std::string& directory) {
  std::filesystem::create_directories(directory);
  const std::filesystem::path dir(directory);
  write_text_file((dir / "report.csv").string(), report_csv(report.rows));
  write_text_file((dir / "summary.json").string(), summary_json(report, config));
  write_text_file((dir / "histogram.csv").string(), histogram_csv(report.cells));
  write_text_file((dir / "success_curve.csv").string(), success_curve_csv(report.cells));
}

std::shared_ptr<const SmoothObjective> contour_objective(const ContourConfig& config) {
  const double c1 = config.center_x1;
  const double c2 = config.center_x2;
  return std::make_shared<const FunctionObjective>(
      2,
      [c1, c2](const Vector& x) {
        const double d1 = x[0] - c1;
        const double d2 = x[1] - c2;
        ValueAndGradient out;
        out.value = d1 * d1 + d2 * d2;
        out.gradient = (Vector(2) << 2.0 * d1, 2.0 * d2).finished();
        return out;
      },
      2.0);
}

ContourOutput run_contour(const ContourConfig& config) {
  ContourSpec spec;
  spec.objective = contour_objective(config);
  spec.lambda = config.lambda;
  spec.p = config.p;

  ContourOutput out;
  if (config.lambda > 0.0) {
    const LpProblem problem(spec.objective, config.lambda, config.p);
    SolverOptions options;
    options.p = config.p;
    options.lambda = config.lambda;
    options.beta = 2.0;  // exact curvature of the quadratic
    options.eps0 = config.anchor_eps0;
    options.x0 = config.anchor;
    options.opttol = 1e-10;
    options.max_iter = 5000;
    options.store_iterates = false;
    const SolveResult result = irl1_ls_solve(problem, options);
    out.x_star = result.final_x;
    const EquivalenceCertificate cert = weighted_l1_certificate(problem, out.x_star, config.margin);
    out.weights = cert.weights;
    out.kkt_violation = cert.max_kkt_violation;
  } else {
    out.weights = Vector::Zero(2);
  }
  spec.weights = out.weights;
  out.grid = contour_grid(spec, config.x_range, config.y_range, config.resolution, config.jobs);
  return out;
}

std::string contour_csv(const ContourGrid& grid) {
  std::string out = "x,y,f_lp,f_wl1\n";
  for (Index r = 0; r < grid.ys.size(); ++r) {
    for (Index c = 0; c < grid.xs.size(); ++c) {
      out += fmt::format("{},{},{},{}\n", format_double(grid.xs[c]), format_double(grid.ys[r]),
                         format_double(grid.f_lp(r, c)), format_double(grid.f_wl1(r, c)));
    }
  }
  return out;
}

std::string contour_l1_csv(const ContourGrid& grid) {
  std::string out = "x,y,f_l1\n";
  for (Index r = 0; r < grid.ys.size(); ++r) {
    for (Index c = 0; c < grid.xs.size(); ++c) {
      out += fmt::format("{},{},{}\n", format_double(grid.xs[c]), format_double(grid.ys[r]),
                         format_double(grid.f_l1(r, c)));
    }
  }
  return out;
}

}  // namespace irl1
