#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irl1/problem_model.hpp"
#include "irl1/reweighting.hpp"
#include "irl1/subproblem.hpp"

namespace irl1 {

enum class ModelKind {
  Proximal,           // beta/2 ||x - x^k||^2
  DiagonalQuadratic,  // diag(curvature of f) + beta
  DenseQuadratic,     // caller supplied B
};

std::string_view to_string(ModelKind kind);
/// Accepts "prox", "dquad" and "dense".
ModelKind parse_model_kind(std::string_view name);

/// Solver tunables. Defaults are the sparse-recovery experiment settings.
struct SolverOptions {
  double p = 0.5;
  double lambda = 0.05;
  double eps0 = 1.0;
  double mu = 0.9;
  ModelKind model = ModelKind::Proximal;
  double beta = 0.1;
  /// Required for ModelKind::DenseQuadratic.
  std::optional<Matrix> dense_curvature;
  double gamma = 1e-4;
  double gamma_bar = 1.1;
  double opttol = 1e-6;
  int max_iter = 500;
  EpsilonStrategy eps_strategy = EpsilonStrategy::SmartReweighting;
  bool use_line_search = true;
  int max_line_search_trials = 100;
  double subproblem_tol = 1e-10;
  /// Starting point; empty means the origin.
  Vector x0;
  /// Keep x, eps and w in every trace record. Supports and signs are always
  /// kept.
  bool store_iterates = true;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

enum class SolveStatus { Converged, MaxIterations, LineSearchFailure };

std::string_view to_string(SolveStatus status);

struct IterateRecord {
  int k = 0;
  Vector x;    // empty unless store_iterates
  Vector eps;  // empty unless store_iterates
  Vector w;    // weights w(x^k, eps^k); empty unless store_iterates
  double F_smoothed = 0.0;
  double F = 0.0;
  double f = 0.0;
  double residual = 0.0;
  std::vector<Index> support;
  std::vector<std::int8_t> signs;
  /// Proximal shift that produced x^k (0 for k = 0).
  double gamma_used = 0.0;
  int ls_trials = 0;
  /// ||x^k - x^{k-1}||^2 (0 for k = 0).
  double step_sq = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::MaxIterations;
  Vector final_x;
  int iterations = 0;
  std::vector<IterateRecord> trace;
  int support_stable_at = 0;
  double final_residual = 0.0;
  std::vector<std::string> warnings;
};

/// max over {i : x_i != 0} of |grad_i f(x) + lambda p |x_i|^(p-1) sign(x_i)|,
/// and 0 for an empty support.
double stationarity_residual(const LpProblem& problem, const Vector& x);
double stationarity_residual(const LpProblem& problem, const Vector& x,
                             const Vector& grad);

/// Plain IRL1 loop: reweigh, solve the local model, update eps, test the
/// stationarity residual of the new iterate.
SolveResult irl1_solve(const LpProblem& problem, const SolverOptions& options);

/// Relative rounding allowance of the sufficient-decrease test: a trial is
/// accepted when f(x) - f(x+) >= model decrease + gamma ||d||^2
/// - kLineSearchRoundoff * (|f(x)| + |f(x+)|).
inline constexpr double kLineSearchRoundoff = 8.0 * 2.220446049250313e-16;

/// IRL1 with the sufficient-decrease line search over the proximal shifts
/// {0, 1, gamma_bar, gamma_bar^2, ...}.
SolveResult irl1_ls_solve(const LpProblem& problem, const SolverOptions& options);

/// Dispatches on options.use_line_search.
SolveResult solve(const LpProblem& problem, const SolverOptions& options);

/// Smallest k such that support and signs agree for every record from k to
/// the end of the trace.
int detect_support_stabilization(const std::vector<IterateRecord>& trace);

/// Proximal shift tried at the given zero-based trial index.
double line_search_shift(int trial, double gamma_bar);

/// Builds the local model requested by `options` at (x, grad f(x)).
LocalModelSpec make_local_model(const LpProblem& problem,
                                const SolverOptions& options, const Vector& x,
                                const Vector& grad);

/// Writes `k,F,F_eps,residual,nnz,gamma,ls_trials` rows.
void write_trace_csv(const std::vector<IterateRecord>& trace, const std::string& path);

}  // namespace irl1
