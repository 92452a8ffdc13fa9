#include "irl1/subproblem.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace irl1 {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double soft_threshold(double z, double t) {
  const double magnitude = std::abs(z) - t;
  if (magnitude <= 0.0) return 0.0;
  return z > 0.0 ? magnitude : -magnitude;
}

double sign(double v) { return (v > 0.0) - (v < 0.0); }

double weighted_l1(const Vector& x, const Vector& w) {
  return w.cwiseProduct(x.cwiseAbs()).sum();
}

}  // namespace

LocalModelSpec::LocalModelSpec(ModelCurvature curvature, Vector anchor,
                               Vector anchor_gradient)
    : curvature_(std::move(curvature)),
      anchor_(std::move(anchor)),
      anchor_gradient_(std::move(anchor_gradient)) {
  const Index n = anchor_.size();
  if (anchor_gradient_.size() != n) {
    throw std::invalid_argument("LocalModelSpec: anchor/gradient size mismatch");
  }
  std::visit(
      Overloaded{
          [](const ProximalFirstOrder& m) {
            if (!(m.beta > 0.0) || !std::isfinite(m.beta)) {
              throw std::invalid_argument("ProximalFirstOrder: beta must be positive");
            }
          },
          [n](const DiagonalQuasiNewton& m) {
            if (m.diag.size() != n) {
              throw std::invalid_argument("DiagonalQuasiNewton: size mismatch");
            }
            for (Index i = 0; i < n; ++i) {
              if (!(m.diag[i] > 0.0) || !std::isfinite(m.diag[i])) {
                throw std::invalid_argument(
                    "DiagonalQuasiNewton: diagonal must be positive");
              }
            }
          },
          [n](const DenseQuadratic& m) {
            if (m.B.rows() != n || m.B.cols() != n) {
              throw std::invalid_argument("DenseQuadratic: size mismatch");
            }
            const double scale = std::max(1.0, m.B.cwiseAbs().maxCoeff());
            if ((m.B - m.B.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
              throw std::invalid_argument("DenseQuadratic: B is not symmetric");
            }
            Eigen::LLT<Matrix> llt(m.B);
            if (llt.info() != Eigen::Success) {
              throw std::invalid_argument(
                  "DenseQuadratic: B is not positive definite");
            }
          },
      },
      curvature_);
}

double LocalModelSpec::value(const Vector& x) const {
  const Vector d = x - anchor_;
  const double linear = anchor_gradient_.dot(d);
  return std::visit(
      Overloaded{
          [&](const ProximalFirstOrder& m) {
            return linear + 0.5 * m.beta * d.squaredNorm();
          },
          [&](const DiagonalQuasiNewton& m) {
            return linear + 0.5 * d.dot(m.diag.cwiseProduct(d));
          },
          [&](const DenseQuadratic& m) {
            return linear + 0.5 * d.dot(m.B * d);
          },
      },
      curvature_);
}

Vector LocalModelSpec::gradient_at(const Vector& x) const {
  const Vector d = x - anchor_;
  return std::visit(
      Overloaded{
          [&](const ProximalFirstOrder& m) -> Vector {
            return anchor_gradient_ + m.beta * d;
          },
          [&](const DiagonalQuasiNewton& m) -> Vector {
            return anchor_gradient_ + m.diag.cwiseProduct(d);
          },
          [&](const DenseQuadratic& m) -> Vector {
            return anchor_gradient_ + m.B * d;
          },
      },
      curvature_);
}

double LocalModelSpec::min_curvature() const {
  return std::visit(
      Overloaded{
          [](const ProximalFirstOrder& m) { return m.beta; },
          [](const DiagonalQuasiNewton& m) { return m.diag.minCoeff(); },
          [](const DenseQuadratic& m) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(m.B, Eigen::EigenvaluesOnly);
            return es.eigenvalues().minCoeff();
          },
      },
      curvature_);
}

double LocalModelSpec::max_curvature() const {
  return std::visit(
      Overloaded{
          [](const ProximalFirstOrder& m) { return m.beta; },
          [](const DiagonalQuasiNewton& m) { return m.diag.maxCoeff(); },
          [](const DenseQuadratic& m) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(m.B, Eigen::EigenvaluesOnly);
            return es.eigenvalues().maxCoeff();
          },
      },
      curvature_);
}

Vector prox_weighted_l1(const Vector& z, const Vector& t) {
  if (z.size() != t.size()) {
    throw std::invalid_argument("prox_weighted_l1: size mismatch");
  }
  Vector out(z.size());
  for (Index i = 0; i < z.size(); ++i) {
    if (t[i] < 0.0) throw std::invalid_argument("prox_weighted_l1: negative threshold");
    out[i] = soft_threshold(z[i], t[i]);
  }
  return out;
}

Vector solve_dense_coordinate_descent(const LocalModelSpec& model, double lambda,
                                      const WeightVector& w,
                                      const SubproblemOptions& options,
                                      std::vector<double>* sweep_objectives) {
  const auto* dense = std::get_if<DenseQuadratic>(&model.curvature());
  if (dense == nullptr) {
    throw std::invalid_argument("solve_dense_coordinate_descent: not a dense model");
  }
  const Matrix& B = dense->B;
  const Vector& a = model.anchor();
  const Vector thresholds = lambda * w.values();
  const Index n = model.dimension();

  Vector x = a;
  // grad Q(x), kept current as coordinates move.
  Vector grad = model.anchor_gradient();

  auto objective = [&]() {
    return model.value(x) + lambda * weighted_l1(x, w.values());
  };
  if (sweep_objectives != nullptr) sweep_objectives->push_back(objective());

  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    for (Index i = 0; i < n; ++i) {
      const double h = B(i, i);
      const double updated = soft_threshold(x[i] - grad[i] / h, thresholds[i] / h);
      const double delta = updated - x[i];
      if (delta != 0.0) {
        x[i] = updated;
        grad.noalias() += delta * B.col(i);
      }
    }
    if (sweep_objectives != nullptr) sweep_objectives->push_back(objective());

    double violation = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double v = x[i] != 0.0
                           ? std::abs(grad[i] + thresholds[i] * sign(x[i]))
                           : std::max(std::abs(grad[i]) - thresholds[i], 0.0);
      violation = std::max(violation, v);
    }
    if (violation <= options.tol) return x;
  }
  throw SubproblemError("coordinate descent did not reach the requested tolerance");
}

Vector solve_model(const LocalModelSpec& model, double lambda,
                   const WeightVector& w, const SubproblemOptions& options) {
  if (!(lambda > 0.0)) throw std::invalid_argument("solve_model: lambda must be positive");
  if (w.size() != model.dimension()) {
    throw std::invalid_argument("solve_model: weight size mismatch");
  }
  const Vector& a = model.anchor();
  const Vector& g = model.anchor_gradient();
  return std::visit(
      Overloaded{
          [&](const ProximalFirstOrder& m) -> Vector {
            return prox_weighted_l1(a - g / m.beta, (lambda / m.beta) * w.values());
          },
          [&](const DiagonalQuasiNewton& m) -> Vector {
            return prox_weighted_l1(a - g.cwiseQuotient(m.diag),
                                    (lambda * w.values()).cwiseQuotient(m.diag));
          },
          [&](const DenseQuadratic&) -> Vector {
            return solve_dense_coordinate_descent(model, lambda, w, options);
          },
      },
      model.curvature());
}

double subproblem_optimality_violation(const LocalModelSpec& model,
                                       double lambda, const WeightVector& w,
                                       const Vector& x) {
  const Vector grad = model.gradient_at(x);
  double violation = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    const double t = lambda * w[i];
    const double v = x[i] != 0.0 ? std::abs(grad[i] + t * sign(x[i]))
                                 : std::max(std::abs(grad[i]) - t, 0.0);
    violation = std::max(violation, v);
  }
  return violation;
}

double model_decrease(const LocalModelSpec& model, const Vector& x_new) {
  return -model.value(x_new);
}

LocalModelSpec add_proximal_term(const LocalModelSpec& model, double Gamma) {
  if (!(Gamma >= 0.0) || !std::isfinite(Gamma)) {
    throw std::invalid_argument("add_proximal_term: Gamma must be nonnegative");
  }
  ModelCurvature shifted = std::visit(
      Overloaded{
          [&](const ProximalFirstOrder& m) -> ModelCurvature {
            return ProximalFirstOrder{m.beta + Gamma};
          },
          [&](const DiagonalQuasiNewton& m) -> ModelCurvature {
            return DiagonalQuasiNewton{m.diag.array() + Gamma};
          },
          [&](const DenseQuadratic& m) -> ModelCurvature {
            Matrix B = m.B;
            B.diagonal().array() += Gamma;
            return DenseQuadratic{std::move(B)};
          },
      },
      model.curvature());
  return LocalModelSpec(std::move(shifted), model.anchor(), model.anchor_gradient());
}

}  // namespace irl1
