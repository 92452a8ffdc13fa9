// Command-line front end: gen, solve, experiment, contour.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irl1/diagnostics.hpp"
#include "irl1/experiment.hpp"
#include "irl1/instance_gen.hpp"
#include "irl1/serialization.hpp"
#include "irl1/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitMaxIterations = 2;
constexpr int kExitLineSearchFailure = 3;

std::string default_out_dir() {
  const char* env = std::getenv("IRL1_DEFAULT_OUT");
  return env != nullptr && *env != '\0' ? env : ".";
}

struct SolverFlags {
  irl1::SolverOptions options;
  std::string eps_strategy = "sr";
  std::string model = "prox";
  bool line_search = true;

  void attach(CLI::App* app) {
    app->add_option("--p", options.p, "Quasi-norm exponent in (0,1)")->capture_default_str();
    app->add_option("--lambda", options.lambda, "Regularization weight")->capture_default_str();
    app->add_option("--mu", options.mu, "Smoothing shrink factor in (0,1)")->capture_default_str();
    app->add_option("--eps0", options.eps0, "Initial smoothing (broadcast)")->capture_default_str();
    app->add_option("--beta", options.beta, "Proximal curvature")->capture_default_str();
    app->add_option("--gamma", options.gamma, "Sufficient-decrease constant")->capture_default_str();
    app->add_option("--gamma-bar", options.gamma_bar, "Line-search growth factor (>1)")
        ->capture_default_str();
    app->add_option("--opttol", options.opttol, "Stationarity tolerance")->capture_default_str();
    app->add_option("--max-iter", options.max_iter, "Iteration budget")->capture_default_str();
    app->add_option("--eps-strategy", eps_strategy, "Smoothing update rule")
        ->check(CLI::IsMember({"geometric", "sr"}))
        ->capture_default_str();
    app->add_option("--model", model, "Local model")
        ->check(CLI::IsMember({"prox", "dquad"}))
        ->capture_default_str();
    app->add_flag("--line-search,!--no-line-search", line_search,
                  "Enable the sufficient-decrease line search (default on)");
  }

  irl1::SolverOptions resolve() const {
    irl1::SolverOptions out = options;
    out.eps_strategy = irl1::parse_epsilon_strategy(eps_strategy);
    out.model = irl1::parse_model_kind(model);
    out.use_line_search = line_search;
    out.validate();
    return out;
  }
};

template <class T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if constexpr (std::is_same_v<T, double>) {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument("bad number: " + item);
      out.push_back(v);
    } else {
      out.push_back(item);
    }
  }
  return out;
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto values = parse_list<double>(text);
  if (values.size() != 2 || !(values[0] < values[1])) {
    throw std::invalid_argument("range must look like lo,hi with lo < hi: " + text);
  }
  return {values[0], values[1]};
}

int run_gen(const std::string& profile, int count, int m, int n, int K, std::uint64_t seed,
            double noise_std, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<irl1::RecoveryInstance> instances;
  if (m > 0 || n > 0 || K > 0) {
    instances.push_back(irl1::generate_instance(m, n, K, seed, noise_std));
  } else {
    instances = irl1::generate_ensemble(irl1::parse_profile(profile), count, seed, noise_std);
  }
  for (const auto& inst : instances) {
    const auto path = std::filesystem::path(out_dir) / ("instance_" + std::to_string(inst.seed) + ".json");
    irl1::write_text_file(path.string(), irl1::instance_to_json(inst));
    std::cout << path.string() << '\n';
  }
  return kExitOk;
}

int run_solve(const std::string& instance_path, const SolverFlags& flags,
              const std::string& trace_path, const std::string& out_dir) {
  irl1::ProblemData data;
  try {
    data = irl1::read_problem_file(instance_path);
  } catch (const irl1::FormatError& e) {
    std::cerr << "error: " << instance_path << ": " << e.what() << '\n';
    return kExitInputError;
  }
  const irl1::SolverOptions options = flags.resolve();
  auto objective = std::make_shared<const irl1::LeastSquaresObjective>(data.A, data.y);
  const irl1::LpProblem problem(objective, options.lambda, options.p);
  const irl1::SolveResult result = irl1::solve(problem, options);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  irl1::write_text_file((dir / "result.json").string(), irl1::result_to_json(result, problem, options));
  if (!trace_path.empty()) irl1::write_trace_csv(result.trace, trace_path);
  if (result.status == irl1::SolveStatus::Converged) {
    const auto cert = irl1::weighted_l1_certificate(problem, result.final_x);
    const auto scales = irl1::map_laplace_scales(result.final_x, cert, problem.lambda());
    irl1::write_text_file((dir / "certificate.json").string(), irl1::certificate_to_json(cert, scales));
  }

  std::cout << "status " << irl1::to_string(result.status) << ", iterations " << result.iterations
            << ", N_S " << result.support_stable_at << ", residual " << result.final_residual
            << ", nnz " << result.trace.back().support.size() << '\n';
  switch (result.status) {
    case irl1::SolveStatus::Converged:
      return kExitOk;
    case irl1::SolveStatus::MaxIterations:
      return kExitMaxIterations;
    case irl1::SolveStatus::LineSearchFailure:
      return kExitLineSearchFailure;
  }
  return kExitInputError;
}

int run_experiment_cmd(irl1::ExperimentConfig config, const std::string& out_dir) {
  const irl1::ExperimentReport report = irl1::run_experiment(config);
  irl1::write_experiment_outputs(report, config, out_dir);
  for (const auto& cell : report.cells) {
    std::cout << irl1::to_string(cell.strategy) << " eps0=" << cell.eps0 << ": converged "
              << cell.converged << "/" << cell.runs << ", correct support " << cell.correct_support
              << ", N_S/N<=0.5 " << cell.stable_by_half << ", N p50/p90 " << cell.iterations_p50
              << "/" << cell.iterations_p90 << '\n';
  }
  std::cout << "wrote " << out_dir << '\n';
  return kExitOk;
}

int run_contour_cmd(const irl1::ContourConfig& config, const std::string& out_dir) {
  const irl1::ContourOutput out = irl1::run_contour(config);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  irl1::write_text_file((dir / "contour.csv").string(), irl1::contour_csv(out.grid));
  irl1::write_text_file((dir / "contour_l1.csv").string(), irl1::contour_l1_csv(out.grid));
  const auto [r_lp, c_lp] = irl1::ContourGrid::argmin(out.grid.f_lp);
  const auto [r_w, c_w] = irl1::ContourGrid::argmin(out.grid.f_wl1);
  std::cout << "lp argmin (" << out.grid.xs[c_lp] << ", " << out.grid.ys[r_lp] << "), weighted-l1 argmin ("
            << out.grid.xs[c_w] << ", " << out.grid.ys[r_w] << ")\n";
  if (out.x_star.size() == 2) {
    std::cout << "certified point (" << out.x_star[0] << ", " << out.x_star[1] << "), weights ("
              << out.weights[0] << ", " << out.weights[1] << "), kkt violation " << out.kkt_violation
              << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iteratively reweighted l1 solver for lp-regularized least squares"};
  app.require_subcommand(1);
  const std::string out_default = default_out_dir();

  // gen
  auto* gen = app.add_subcommand("gen", "Generate sparse-recovery instances");
  std::string gen_profile = "small";
  int gen_count = 1;
  int gen_m = 0;
  int gen_n = 0;
  int gen_K = 0;
  std::uint64_t gen_seed = 0;
  double gen_noise = irl1::kDefaultNoiseStd;
  std::string gen_out = out_default;
  gen->add_option("--profile", gen_profile, "small or large")
      ->check(CLI::IsMember({"small", "large"}))
      ->capture_default_str();
  gen->add_option("--count", gen_count, "Number of instances")->capture_default_str();
  gen->add_option("--m", gen_m, "Rows (custom shape)");
  gen->add_option("--n", gen_n, "Columns (custom shape)");
  gen->add_option("--K", gen_K, "Spikes (custom shape)");
  gen->add_option("--seed", gen_seed, "Seed (base seed for ensembles)")->capture_default_str();
  gen->add_option("--noise-std", gen_noise, "Noise standard deviation")->capture_default_str();
  gen->add_option("--out", gen_out, "Output directory")->capture_default_str();

  // solve
  auto* solve = app.add_subcommand("solve", "Solve one instance file");
  SolverFlags solve_flags;
  std::string solve_input;
  std::string solve_trace;
  std::string solve_out = out_default;
  solve->add_option("instance", solve_input, "Instance JSON file")->required();
  solve_flags.attach(solve);
  solve->add_option("--trace", solve_trace, "Write the per-iteration trace CSV here");
  solve->add_option("--out", solve_out, "Output directory")->capture_default_str();

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a paired ensemble experiment");
  SolverFlags exp_flags;
  std::string exp_profile = "small";
  int exp_count = 0;
  std::string exp_strategies = "sr,geometric";
  std::string exp_eps0_list;
  std::uint64_t exp_seed = 0;
  double exp_noise = irl1::kDefaultNoiseStd;
  int exp_jobs = 0;
  std::string exp_out = out_default;
  exp_flags.attach(experiment);
  experiment->add_option("--profile", exp_profile, "small or large")
      ->check(CLI::IsMember({"small", "large"}))
      ->capture_default_str();
  experiment->add_option("--count", exp_count, "Instances (default 50 small, 10 large)");
  experiment->add_option("--strategies", exp_strategies, "Comma-separated eps strategies")
      ->capture_default_str();
  experiment->add_option("--eps0-list", exp_eps0_list, "Comma-separated eps0 sweep (default --eps0)");
  experiment->add_option("--seed", exp_seed, "Base seed")->capture_default_str();
  experiment->add_option("--noise-std", exp_noise, "Noise standard deviation")->capture_default_str();
  experiment->add_option("--jobs", exp_jobs, "Worker threads (0 = all cores)")->capture_default_str();
  experiment->add_option("--out", exp_out, "Output directory")->capture_default_str();

  // contour
  auto* contour = app.add_subcommand("contour", "Emit the 2-D lp / weighted-l1 contour grids");
  irl1::ContourConfig contour_config;
  std::string contour_x_range = "-1,1";
  std::string contour_y_range = "-1,6";
  std::string contour_center = "0.5,5";
  std::string contour_out = out_default;
  contour->add_option("--lambda", contour_config.lambda, "Regularization weight (may be 0)")
      ->capture_default_str();
  contour->add_option("--p", contour_config.p, "Quasi-norm exponent")->capture_default_str();
  contour->add_option("--resolution", contour_config.resolution, "Grid points per axis")
      ->capture_default_str();
  contour->add_option("--x-range", contour_x_range, "lo,hi for x1")->capture_default_str();
  contour->add_option("--y-range", contour_y_range, "lo,hi for x2")->capture_default_str();
  contour->add_option("--center", contour_center, "c1,c2 of the quadratic")->capture_default_str();
  contour->add_option("--jobs", contour_config.jobs, "Worker threads")->capture_default_str();
  contour->add_option("--out", contour_out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*gen) {
      return run_gen(gen_profile, gen_count, gen_m, gen_n, gen_K, gen_seed, gen_noise, gen_out);
    }
    if (*solve) return run_solve(solve_input, solve_flags, solve_trace, solve_out);
    if (*experiment) {
      irl1::ExperimentConfig config;
      config.profile = irl1::parse_profile(exp_profile);
      config.count = exp_count > 0 ? exp_count : irl1::default_count(config.profile);
      config.solver = exp_flags.resolve();
      config.strategies.clear();
      for (const auto& name : parse_list<std::string>(exp_strategies)) {
        config.strategies.push_back(irl1::parse_epsilon_strategy(name));
      }
      config.eps0_values = exp_eps0_list.empty() ? std::vector<double>{config.solver.eps0}
                                                 : parse_list<double>(exp_eps0_list);
      config.base_seed = exp_seed;
      config.noise_std = exp_noise;
      config.jobs = exp_jobs;
      return run_experiment_cmd(config, exp_out);
    }
    if (*contour) {
      contour_config.x_range = parse_range(contour_x_range);
      contour_config.y_range = parse_range(contour_y_range);
      const auto center = parse_list<double>(contour_center);
      if (center.size() != 2) throw std::invalid_argument("--center needs two values");
      contour_config.center_x1 = center[0];
      contour_config.center_x2 = center[1];
      return run_contour_cmd(contour_config, contour_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
