#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "irl1/problem_model.hpp"
#include "irl1/reweighting.hpp"

namespace irl1 {

/// Q(x) = g^T (x - a) + beta/2 ||x - a||^2.
struct ProximalFirstOrder {
  double beta = 1.0;
};

/// Q(x) = g^T (x - a) + 1/2 (x - a)^T diag(d) (x - a).
struct DiagonalQuasiNewton {
  Vector diag;
};

/// Q(x) = g^T (x - a) + 1/2 (x - a)^T B (x - a) with B symmetric positive
/// definite.
struct DenseQuadratic {
  Matrix B;
};

using ModelCurvature =
    std::variant<ProximalFirstOrder, DiagonalQuasiNewton, DenseQuadratic>;

/// Convex local model of f around an anchor point a = x^k with matching
/// gradient g = grad f(x^k). Models are expressed relative to the anchor, so
/// Q(a) = 0.
class LocalModelSpec {
 public:
  /// Validates the curvature (beta > 0, positive diagonal, or a successful
  /// Cholesky factorization of a symmetric B). Throws std::invalid_argument.
  LocalModelSpec(ModelCurvature curvature, Vector anchor, Vector anchor_gradient);

  const ModelCurvature& curvature() const { return curvature_; }
  const Vector& anchor() const { return anchor_; }
  const Vector& anchor_gradient() const { return anchor_gradient_; }
  Index dimension() const { return anchor_.size(); }

  /// Q(x), zero at the anchor.
  double value(const Vector& x) const;
  /// grad Q(x) = g + H (x - a).
  Vector gradient_at(const Vector& x) const;

  /// Smallest and largest eigenvalue of the model Hessian (strong convexity
  /// and gradient Lipschitz constants of Q).
  double min_curvature() const;
  double max_curvature() const;

 private:
  ModelCurvature curvature_;
  Vector anchor_;
  Vector anchor_gradient_;
};

class SubproblemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Componentwise soft threshold sign(z_i) max(|z_i| - t_i, 0). Components
/// with |z_i| <= t_i come out as exactly 0.0.
Vector prox_weighted_l1(const Vector& z, const Vector& t);

struct SubproblemOptions {
  /// Coordinate-wise optimality violation accepted by the dense path.
  double tol = 1e-10;
  int max_sweeps = 100000;
};

/// argmin_x Q(x) + lambda * sum w_i |x_i|.
///
/// Closed form for the proximal and diagonal models. The dense model runs
/// cyclic coordinate descent from the anchor until the largest coordinate
/// optimality violation is at most options.tol, and throws SubproblemError
/// if the sweep budget runs out first.
Vector solve_model(const LocalModelSpec& model, double lambda,
                   const WeightVector& w, const SubproblemOptions& options = {});

/// Coordinate descent for the dense model. When `sweep_objectives` is
/// non-null it receives the subproblem objective after every sweep, with the
/// starting value first.
Vector solve_dense_coordinate_descent(const LocalModelSpec& model, double lambda,
                                      const WeightVector& w,
                                      const SubproblemOptions& options,
                                      std::vector<double>* sweep_objectives = nullptr);

/// Largest violation of the subproblem optimality conditions at x:
/// |dQ_i + lambda w_i sign(x_i)| on nonzeros, max(|dQ_i| - lambda w_i, 0)
/// on zeros.
double subproblem_optimality_violation(const LocalModelSpec& model,
                                       double lambda, const WeightVector& w,
                                       const Vector& x);

/// Q(anchor) - Q(x_new) = -Q(x_new).
double model_decrease(const LocalModelSpec& model, const Vector& x_new);

/// Adds Gamma/2 ||x - anchor||^2 to the model.
LocalModelSpec add_proximal_term(const LocalModelSpec& model, double Gamma);

}  // namespace irl1
