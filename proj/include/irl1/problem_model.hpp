#pragma once

#include <functional>
#include <memory>
#include <optional>

#include <Eigen/Core>

namespace irl1 {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

struct ValueAndGradient {
  double value = 0.0;
  Vector gradient;
};

/// Smooth loss f with a joint value/gradient oracle.
///
/// Implementations are immutable after construction and may be shared
/// across threads.
class SmoothObjective {
 public:
  virtual ~SmoothObjective() = default;

  virtual Index dimension() const = 0;
  virtual ValueAndGradient evaluate(const Vector& x) const = 0;

  /// Value only. The default forwards to evaluate().
  virtual double value(const Vector& x) const { return evaluate(x).value; }

  /// Upper bound on the Lipschitz constant of the gradient, if known.
  virtual std::optional<double> lipschitz_estimate() const {
    return std::nullopt;
  }

  /// Diagonal of a curvature approximation, used by diagonal local models.
  virtual std::optional<Vector> curvature_diagonal() const {
    return std::nullopt;
  }
};

/// Wraps a user supplied value+gradient callable.
class FunctionObjective final : public SmoothObjective {
 public:
  using Evaluator = std::function<ValueAndGradient(const Vector&)>;

  FunctionObjective(Index dimension, Evaluator evaluator,
                    std::optional<double> lipschitz = std::nullopt);

  Index dimension() const override { return dimension_; }
  ValueAndGradient evaluate(const Vector& x) const override;
  std::optional<double> lipschitz_estimate() const override {
    return lipschitz_;
  }

 private:
  Index dimension_;
  Evaluator evaluator_;
  std::optional<double> lipschitz_;
};

/// f(x) = 1/2 ||Ax - y||^2.
class LeastSquaresObjective final : public SmoothObjective {
 public:
  LeastSquaresObjective(Matrix A, Vector y);

  Index dimension() const override { return A_.cols(); }
  ValueAndGradient evaluate(const Vector& x) const override;
  double value(const Vector& x) const override;
  std::optional<double> lipschitz_estimate() const override {
    return lipschitz_;
  }
  // Column squared norms, i.e. diag(A^T A).
  std::optional<Vector> curvature_diagonal() const override;

  const Matrix& A() const { return A_; }
  const Vector& y() const { return y_; }
  Index rows() const { return A_.rows(); }
  Index cols() const { return A_.cols(); }

 private:
  Matrix A_;
  Vector y_;
  double lipschitz_ = 0.0;
};

/// Power iteration on A^T A. Iterates until the relative change of the
/// Rayleigh quotient is at most `tol`, then inflates the result by 1.01.
/// Throws std::runtime_error for a zero matrix or when the iteration budget
/// runs out.
double estimate_lipschitz(const LeastSquaresObjective& objective,
                          double tol = 1e-8, int max_iterations = 100000);

/// min f(x) + lambda * sum |x_i|^p with lambda > 0 and 0 < p < 1.
class LpProblem {
 public:
  LpProblem(std::shared_ptr<const SmoothObjective> objective, double lambda,
            double p);

  const SmoothObjective& objective() const { return *objective_; }
  const std::shared_ptr<const SmoothObjective>& objective_ptr() const {
    return objective_;
  }
  double lambda() const { return lambda_; }
  double p() const { return p_; }
  Index dimension() const { return objective_->dimension(); }

 private:
  std::shared_ptr<const SmoothObjective> objective_;
  double lambda_;
  double p_;
};

/// sum |x_i|^p with |0|^p = 0.
double lp_quasi_norm(const Vector& x, double p);

/// F(x) = f(x) + lambda * sum |x_i|^p.
double evaluate_F(const LpProblem& problem, const Vector& x);

/// F(x, eps) = f(x) + lambda * sum (|x_i| + eps_i)^p. Throws
/// std::invalid_argument unless every eps_i > 0.
double evaluate_F_smoothed(const LpProblem& problem, const Vector& x,
                           const Vector& eps);

/// Smoothed regularizer alone, sum (|x_i| + eps_i)^p.
double smoothed_regularizer(const Vector& x, const Vector& eps, double p);

inline Vector gradient(const SmoothObjective& objective, const Vector& x) {
  return objective.evaluate(x).gradient;
}

}  // namespace irl1
