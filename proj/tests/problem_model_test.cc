#include "irl1/problem_model.hpp"

#include <cmath>
#include <memory>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace irl1 {
namespace {

std::shared_ptr<const SmoothObjective> shifted_square(double c) {
  return std::make_shared<FunctionObjective>(1, [c](const Vector& x) {
    ValueAndGradient out;
    out.value = 0.5 * (x[0] - c) * (x[0] - c);
    out.gradient = Vector::Constant(1, x[0] - c);
    return out;
  });
}

std::shared_ptr<const SmoothObjective> zero_objective(Index n) {
  return std::make_shared<FunctionObjective>(n, [n](const Vector&) {
    return ValueAndGradient{0.0, Vector::Zero(n)};
  });
}

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

TEST(EvaluateF, RegularizerVanishesAtZero) {
  const LpProblem problem(shifted_square(1.0), 0.05, 0.5);
  EXPECT_DOUBLE_EQ(evaluate_F(problem, vec({0.0})), 0.5);
}

TEST(EvaluateF, UnitEntries) {
  auto half_norm = std::make_shared<LeastSquaresObjective>(Matrix::Identity(2, 2), Vector::Zero(2));
  const LpProblem problem(half_norm, 1.0, 0.5);
  EXPECT_DOUBLE_EQ(evaluate_F(problem, vec({1.0, 1.0})), 3.0);
}

TEST(EvaluateF, InteriorPointMatchesHighPrecision) {
  const LpProblem problem(shifted_square(1.0), 0.05, 0.5);
  // 0.005 + 0.05 * sqrt(0.9) evaluated at 40 digits.
  EXPECT_NEAR(evaluate_F(problem, vec({0.9})), 0.05243416490252568998, 1e-15);
}

TEST(EvaluateFSmoothed, ExamplesFromZeroLoss) {
  const LpProblem problem(zero_objective(2), 1.0, 0.5);
  EXPECT_DOUBLE_EQ(evaluate_F_smoothed(problem, vec({0.0, 0.0}), vec({1.0, 1.0})), 2.0);
  EXPECT_DOUBLE_EQ(evaluate_F_smoothed(problem, vec({3.0, 0.0}), vec({1.0, 4.0})), 4.0);
}

TEST(EvaluateFSmoothed, RejectsNonPositiveEps) {
  const LpProblem problem(zero_objective(2), 1.0, 0.5);
  EXPECT_THROW(evaluate_F_smoothed(problem, vec({1.0, 0.0}), vec({1.0, 0.0})),
               std::invalid_argument);
  EXPECT_THROW(evaluate_F_smoothed(problem, vec({1.0, 0.0}), vec({-1.0, 1.0})),
               std::invalid_argument);
}

TEST(EvaluateFSmoothed, GapShrinksAsEpsIsHalvedAndVanishesInTheLimit) {
  std::mt19937_64 rng(7);
  auto ls = std::make_shared<LeastSquaresObjective>(testing::random_gaussian_matrix(5, 8, rng),
                                                    testing::random_vector(5, rng));
  const LpProblem problem(ls, 0.3, 0.5);
  for (int trial = 0; trial < 20; ++trial) {
    Vector x = testing::random_vector(8, rng, -2.0, 2.0);
    x[trial % 8] = 0.0;
    const double exact = evaluate_F(problem, x);
    Vector eps = testing::random_vector(8, rng, 0.1, 1.0);
    double previous_gap = std::numeric_limits<double>::infinity();
    for (int h = 0; h < 40; ++h) {
      const double gap = evaluate_F_smoothed(problem, x, eps) - exact;
      EXPECT_GT(gap, 0.0);
      EXPECT_LT(gap, previous_gap);
      previous_gap = gap;
      eps *= 0.5;
    }
    EXPECT_LT(previous_gap, 1e-4);
  }
}

TEST(EvaluateFSmoothed, MonotoneInEachComponent) {
  std::mt19937_64 rng(11);
  const LpProblem problem(zero_objective(6), 0.7, 0.3);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector x = testing::random_vector(6, rng, -3.0, 3.0);
    const Vector eps = testing::random_vector(6, rng, 0.01, 1.0);
    const double base = evaluate_F_smoothed(problem, x, eps);
    for (Index i = 0; i < 6; ++i) {
      Vector bumped = eps;
      bumped[i] *= 1.5;
      EXPECT_GT(evaluate_F_smoothed(problem, x, bumped), base);
    }
  }
}

TEST(LpProblem, ValidatesParameters) {
  EXPECT_THROW(LpProblem(zero_objective(1), 0.0, 0.5), std::invalid_argument);
  EXPECT_THROW(LpProblem(zero_objective(1), -1.0, 0.5), std::invalid_argument);
  EXPECT_THROW(LpProblem(zero_objective(1), 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(LpProblem(zero_objective(1), 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(LpProblem(nullptr, 1.0, 0.5), std::invalid_argument);
}

TEST(LeastSquares, ValueKeepsTheHalfFactorAndGradientIsNormalEquations) {
  Matrix A(2, 3);
  A << 1, 2, 0, -1, 0, 3;
  const Vector y = vec({1.0, 2.0});
  const LeastSquaresObjective ls(A, y);
  const Vector x = vec({0.5, -1.0, 2.0});
  const Vector r = A * x - y;
  const auto vg = ls.evaluate(x);
  EXPECT_DOUBLE_EQ(vg.value, 0.5 * r.squaredNorm());
  EXPECT_DOUBLE_EQ(ls.value(x), vg.value);
  EXPECT_TRUE(vg.gradient.isApprox(A.transpose() * r));
}

TEST(Gradient, IdentityOperator) {
  const LeastSquaresObjective ls(Matrix::Identity(2, 2), Vector::Zero(2));
  EXPECT_TRUE(gradient(ls, vec({1.0, 2.0})).isApprox(vec({1.0, 2.0})));
}

TEST(Gradient, ZeroAtExactFit) {
  std::mt19937_64 rng(3);
  const Matrix A = testing::random_gaussian_matrix(4, 6, rng);
  const Vector x = testing::random_vector(6, rng);
  const LeastSquaresObjective ls(A, A * x);
  EXPECT_LT(gradient(ls, x).norm(), 1e-12);
}

TEST(Gradient, MatchesCenteredDifferencesOnRandomInstance) {
  std::mt19937_64 rng(5);
  const LeastSquaresObjective ls(testing::random_gaussian_matrix(5, 8, rng),
                                 testing::random_vector(5, rng));
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = testing::random_vector(8, rng, -2.0, 2.0);
    const Vector fd = testing::finite_difference_gradient(
        [&](const Vector& z) { return ls.value(z); }, x, 1e-6);
    const Vector g = gradient(ls, x);
    EXPECT_LE((g - fd).norm() / std::max(1.0, g.norm()), 1e-5);
  }
}

TEST(EstimateLipschitz, ScaledIdentity) {
  const LeastSquaresObjective ls(2.0 * Matrix::Identity(3, 3), Vector::Zero(3));
  EXPECT_NEAR(estimate_lipschitz(ls), 4.0 * 1.01, 1e-6);
}

TEST(EstimateLipschitz, Diagonal) {
  Matrix A = Matrix::Zero(2, 2);
  A(0, 0) = 1.0;
  A(1, 1) = 3.0;
  const LeastSquaresObjective ls(A, Vector::Zero(2));
  EXPECT_NEAR(estimate_lipschitz(ls), 9.0 * 1.01, 1e-6);
  EXPECT_NEAR(*ls.lipschitz_estimate(), 9.0 * 1.01, 1e-6);
}

TEST(EstimateLipschitz, GaussianMatchesDenseEigensolve) {
  std::mt19937_64 rng(17);
  const Matrix A = testing::random_gaussian_matrix(64, 128, rng, 1.0 / 8.0);
  const LeastSquaresObjective ls(A, Vector::Zero(64));
  const double exact = testing::max_eigenvalue(A.transpose() * A);
  const double estimate = estimate_lipschitz(ls);
  EXPECT_GE(estimate, exact);
  EXPECT_LE(estimate, 1.01 * exact * (1.0 + 1e-6));
  EXPECT_NEAR(estimate / exact, 1.01, 0.01);
}

TEST(EstimateLipschitz, ZeroMatrixFails) {
  const LeastSquaresObjective ls(Matrix::Zero(3, 2), Vector::Zero(3));
  EXPECT_THROW(estimate_lipschitz(ls), std::runtime_error);
  EXPECT_EQ(*ls.lipschitz_estimate(), 0.0);
}

TEST(LeastSquares, RejectsShapeMismatch) {
  EXPECT_THROW(LeastSquaresObjective(Matrix::Identity(3, 3), Vector::Zero(2)),
               std::invalid_argument);
}

}  // namespace
}  // namespace irl1
