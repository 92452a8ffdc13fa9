#include "irl1/problem_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace irl1 {

FunctionObjective::FunctionObjective(Index dimension, Evaluator evaluator,
                                     std::optional<double> lipschitz)
    : dimension_(dimension),
      evaluator_(std::move(evaluator)),
      lipschitz_(lipschitz) {
  if (dimension_ <= 0) {
    throw std::invalid_argument("FunctionObjective: dimension must be positive");
  }
  if (!evaluator_) {
    throw std::invalid_argument("FunctionObjective: empty evaluator");
  }
}

ValueAndGradient FunctionObjective::evaluate(const Vector& x) const {
  ValueAndGradient out = evaluator_(x);
  if (out.gradient.size() != dimension_) {
    throw std::runtime_error("FunctionObjective: gradient has wrong size");
  }
  return out;
}

LeastSquaresObjective::LeastSquaresObjective(Matrix A, Vector y)
    : A_(std::move(A)), y_(std::move(y)) {
  if (A_.rows() == 0 || A_.cols() == 0) {
    throw std::invalid_argument("LeastSquaresObjective: empty matrix");
  }
  if (A_.rows() != y_.size()) {
    throw std::invalid_argument(
        "LeastSquaresObjective: y has " + std::to_string(y_.size()) +
        " entries but A has " + std::to_string(A_.rows()) + " rows");
  }
  // The zero operator has a zero gradient Lipschitz constant.
  lipschitz_ = A_.isZero(0.0) ? 0.0 : estimate_lipschitz(*this);
}

ValueAndGradient LeastSquaresObjective::evaluate(const Vector& x) const {
  const Vector residual = A_ * x - y_;
  return {0.5 * residual.squaredNorm(), A_.transpose() * residual};
}

double LeastSquaresObjective::value(const Vector& x) const {
  return 0.5 * (A_ * x - y_).squaredNorm();
}

std::optional<Vector> LeastSquaresObjective::curvature_diagonal() const {
  return A_.colwise().squaredNorm().transpose();
}

double estimate_lipschitz(const LeastSquaresObjective& objective, double tol,
                          int max_iterations) {
  const Matrix& A = objective.A();
  if (A.isZero(0.0)) {
    throw std::runtime_error("estimate_lipschitz: zero matrix");
  }
  // Fixed, non-symmetric start so the iterate is unlikely to be orthogonal
  // to the dominant eigenvector.
  Vector v(A.cols());
  for (Index i = 0; i < v.size(); ++i) {
    v[i] = 1.0 + 0.5 * std::sin(1.0 + static_cast<double>(i));
  }
  v.normalize();

  double estimate = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    const Vector Av = A * v;
    Vector next = A.transpose() * Av;
    const double rayleigh = Av.squaredNorm();
    const double norm = next.norm();
    if (norm == 0.0) {
      // v landed in the null space; the start vector was unlucky.
      throw std::runtime_error("estimate_lipschitz: iterate vanished");
    }
    v = next / norm;
    if (it > 0 && std::abs(rayleigh - estimate) <= tol * rayleigh) {
      return 1.01 * rayleigh;
    }
    estimate = rayleigh;
  }
  throw std::runtime_error("estimate_lipschitz: power iteration did not converge");
}

LpProblem::LpProblem(std::shared_ptr<const SmoothObjective> objective,
                     double lambda, double p)
    : objective_(std::move(objective)), lambda_(lambda), p_(p) {
  if (!objective_) throw std::invalid_argument("LpProblem: null objective");
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) {
    throw std::invalid_argument("LpProblem: lambda must be positive");
  }
  if (!(p_ > 0.0 && p_ < 1.0)) {
    throw std::invalid_argument("LpProblem: p must lie in (0, 1)");
  }
}

double lp_quasi_norm(const Vector& x, double p) {
  double sum = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) sum += std::pow(std::abs(x[i]), p);
  }
  return sum;
}

double smoothed_regularizer(const Vector& x, const Vector& eps, double p) {
  if (eps.size() != x.size()) {
    throw std::invalid_argument("smoothed_regularizer: size mismatch");
  }
  double sum = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    if (!(eps[i] > 0.0)) {
      throw std::invalid_argument("smoothing parameter must be positive");
    }
    sum += std::pow(std::abs(x[i]) + eps[i], p);
  }
  return sum;
}

double evaluate_F(const LpProblem& problem, const Vector& x) {
  return problem.objective().value(x) +
         problem.lambda() * lp_quasi_norm(x, problem.p());
}

double evaluate_F_smoothed(const LpProblem& problem, const Vector& x,
                           const Vector& eps) {
  const double reg = smoothed_regularizer(x, eps, problem.p());
  return problem.objective().value(x) + problem.lambda() * reg;
}

}  // namespace irl1
