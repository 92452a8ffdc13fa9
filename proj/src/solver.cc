#include "irl1/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace irl1 {
namespace {

IterateRecord make_record(const LpProblem& problem, const SolverOptions& options,
                          int k, const Vector& x, const EpsilonState& eps,
                          const ValueAndGradient& vg) {
  IterateRecord rec;
  rec.k = k;
  rec.f = vg.value;
  const double lambda = problem.lambda();
  rec.F = vg.value + lambda * lp_quasi_norm(x, problem.p());
  rec.F_smoothed = vg.value + lambda * smoothed_regularizer(x, eps.eps(), problem.p());
  rec.residual = stationarity_residual(problem, x, vg.gradient);
  rec.signs.resize(static_cast<std::size_t>(x.size()));
  for (Index i = 0; i < x.size(); ++i) {
    rec.signs[static_cast<std::size_t>(i)] = static_cast<std::int8_t>((x[i] > 0.0) - (x[i] < 0.0));
    if (x[i] != 0.0) rec.support.push_back(i);
  }
  if (options.store_iterates) {
    rec.x = x;
    rec.eps = eps.eps();
    rec.w = compute_weights(x, eps.eps(), problem.p()).values();
  }
  return rec;
}

void check_start(const LpProblem& problem, const SolverOptions& options) {
  options.validate();
  if (options.p != problem.p() || options.lambda != problem.lambda()) {
    throw std::invalid_argument("SolverOptions: p/lambda disagree with the problem");
  }
  if (options.x0.size() != 0 && options.x0.size() != problem.dimension()) {
    throw std::invalid_argument("SolverOptions: x0 has the wrong dimension");
  }
  if (options.model == ModelKind::DenseQuadratic &&
      options.dense_curvature->rows() != problem.dimension()) {
    throw std::invalid_argument("SolverOptions: dense curvature has the wrong size");
  }
}

SolveResult run(const LpProblem& problem, const SolverOptions& options,
                bool line_search) {
  check_start(problem, options);
  const SmoothObjective& f = problem.objective();
  const Index n = problem.dimension();
  const double lambda = problem.lambda();

  SolveResult result;
  Vector x = options.x0.size() == 0 ? Vector::Zero(n) : options.x0;
  EpsilonState eps = EpsilonState::broadcast(n, options.eps0, options.mu,
                                             options.eps_strategy);
  ValueAndGradient vg = f.evaluate(x);
  result.trace.push_back(make_record(problem, options, 0, x, eps, vg));

  if (!line_search) {
    const auto lf = f.lipschitz_estimate();
    if (lf) {
      const double curvature = make_local_model(problem, options, x, vg.gradient).min_curvature();
      if (curvature <= *lf / 2.0) {
        result.warnings.push_back(fmt::format(
            "model curvature {:.6g} does not exceed L_f/2 = {:.6g}; the smoothed "
            "objective is not guaranteed to decrease without line search",
            curvature, *lf / 2.0));
      }
    }
  }

  const SubproblemOptions sub_options{options.subproblem_tol};
  result.status = SolveStatus::MaxIterations;
  int k = 0;
  while (k < options.max_iter) {
    const WeightVector w = compute_weights(x, eps.eps(), problem.p());
    const LocalModelSpec base = make_local_model(problem, options, x, vg.gradient);

    Vector x_new;
    double gamma_used = 0.0;
    int trials = 0;
    if (!line_search) {
      x_new = solve_model(base, lambda, w, sub_options);
      trials = 1;
    } else {
      bool accepted = false;
      for (int t = 0; t < options.max_line_search_trials; ++t) {
        const double shift = line_search_shift(t, options.gamma_bar);
        const LocalModelSpec model = add_proximal_term(base, shift);
        Vector candidate = solve_model(model, lambda, w, sub_options);
        const double f_candidate = f.value(candidate);
        const double f_decrease = vg.value - f_candidate;
        // Differences of f below its rounding resolution cannot be resolved.
        const double roundoff = kLineSearchRoundoff * (std::abs(vg.value) + std::abs(f_candidate));
        const double required = model_decrease(model, candidate) +
                                options.gamma * (candidate - x).squaredNorm() - roundoff;
        trials = t + 1;
        if (f_decrease >= required) {
          x_new = std::move(candidate);
          gamma_used = shift;
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        result.status = SolveStatus::LineSearchFailure;
        break;
      }
    }

    eps = update_epsilon(eps, x_new);
    const double step_sq = (x_new - x).squaredNorm();
    x = std::move(x_new);
    vg = f.evaluate(x);
    ++k;

    IterateRecord rec = make_record(problem, options, k, x, eps, vg);
    rec.gamma_used = gamma_used;
    rec.ls_trials = trials;
    rec.step_sq = step_sq;
    const double residual = rec.residual;
    result.trace.push_back(std::move(rec));
    if (residual <= options.opttol) {
      result.status = SolveStatus::Converged;
      break;
    }
  }

  result.final_x = x;
  result.iterations = k;
  result.final_residual = result.trace.back().residual;
  result.support_stable_at = detect_support_stabilization(result.trace);
  return result;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Proximal:
      return "prox";
    case ModelKind::DiagonalQuadratic:
      return "dquad";
    case ModelKind::DenseQuadratic:
      return "dense";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "prox") return ModelKind::Proximal;
  if (name == "dquad") return ModelKind::DiagonalQuadratic;
  if (name == "dense") return ModelKind::DenseQuadratic;
  throw std::invalid_argument("unknown model kind: " + std::string(name));
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged:
      return "Converged";
    case SolveStatus::MaxIterations:
      return "MaxIterations";
    case SolveStatus::LineSearchFailure:
      return "LineSearchFailure";
  }
  return "unknown";
}

void SolverOptions::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("SolverOptions: ") + what);
  };
  require(p > 0.0 && p < 1.0, "p must lie in (0, 1)");
  require(lambda > 0.0 && std::isfinite(lambda), "lambda must be positive");
  require(eps0 > 0.0 && std::isfinite(eps0), "eps0 must be positive");
  require(mu > 0.0 && mu < 1.0, "mu must lie in (0, 1)");
  require(beta > 0.0 && std::isfinite(beta), "beta must be positive");
  require(gamma > 0.0 && std::isfinite(gamma), "gamma must be positive");
  require(gamma_bar > 1.0 && std::isfinite(gamma_bar), "gamma_bar must exceed 1");
  require(opttol > 0.0, "opttol must be positive");
  require(max_iter > 0, "max_iter must be positive");
  require(max_line_search_trials > 0, "max_line_search_trials must be positive");
  require(subproblem_tol > 0.0, "subproblem_tol must be positive");
  require(model != ModelKind::DenseQuadratic || dense_curvature.has_value(),
          "dense model needs a curvature matrix");
}

double stationarity_residual(const LpProblem& problem, const Vector& x,
                             const Vector& grad) {
  const double lp = problem.lambda() * problem.p();
  double worst = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    const double s = x[i] > 0.0 ? 1.0 : -1.0;
    const double r = std::abs(grad[i] + lp * std::pow(std::abs(x[i]), problem.p() - 1.0) * s);
    worst = std::max(worst, r);
  }
  return worst;
}

double stationarity_residual(const LpProblem& problem, const Vector& x) {
  return stationarity_residual(problem, x, gradient(problem.objective(), x));
}

double line_search_shift(int trial, double gamma_bar) {
  return trial == 0 ? 0.0 : std::pow(gamma_bar, trial - 1);
}

LocalModelSpec make_local_model(const LpProblem& problem,
                                const SolverOptions& options, const Vector& x,
                                const Vector& grad) {
  switch (options.model) {
    case ModelKind::Proximal:
      return LocalModelSpec(ProximalFirstOrder{options.beta}, x, grad);
    case ModelKind::DiagonalQuadratic: {
      const auto diag = problem.objective().curvature_diagonal();
      Vector d = diag ? Vector(diag->array() + options.beta)
                      : Vector::Constant(x.size(), options.beta);
      return LocalModelSpec(DiagonalQuasiNewton{std::move(d)}, x, grad);
    }
    case ModelKind::DenseQuadratic:
      return LocalModelSpec(DenseQuadratic{*options.dense_curvature}, x, grad);
  }
  throw std::logic_error("make_local_model: bad model kind");
}

SolveResult irl1_solve(const LpProblem& problem, const SolverOptions& options) {
  return run(problem, options, false);
}

SolveResult irl1_ls_solve(const LpProblem& problem, const SolverOptions& options) {
  return run(problem, options, true);
}

SolveResult solve(const LpProblem& problem, const SolverOptions& options) {
  return run(problem, options, options.use_line_search);
}

int detect_support_stabilization(const std::vector<IterateRecord>& trace) {
  if (trace.empty()) {
    throw std::invalid_argument("detect_support_stabilization: empty trace");
  }
  const auto& last = trace.back().signs;
  std::size_t k = trace.size() - 1;
  while (k > 0 && trace[k - 1].signs == last) --k;
  return trace[k].k;
}

void write_trace_csv(const std::vector<IterateRecord>& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open trace file " + path);
  out << "k,F,F_eps,residual,nnz,gamma,ls_trials\n";
  for (const auto& rec : trace) {
    out << fmt::format("{},{:.17g},{:.17g},{:.17g},{},{:.17g},{}\n", rec.k, rec.F,
                       rec.F_smoothed, rec.residual, rec.support.size(),
                       rec.gamma_used, rec.ls_trials);
  }
}

}  // namespace irl1
