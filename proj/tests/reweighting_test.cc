#include "irl1/reweighting.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace irl1 {
namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

TEST(ComputeWeights, Examples) {
  const WeightVector w = compute_weights(vec({0.0, 3.0, 0.21}), vec({1.0, 1.0, 0.04}), 0.5);
  EXPECT_DOUBLE_EQ(w[0], 0.5);
  EXPECT_DOUBLE_EQ(w[1], 0.25);
  EXPECT_NEAR(w[2], 1.0, 1e-15);
}

TEST(ComputeWeights, RejectsNonPositiveEps) {
  EXPECT_THROW(compute_weights(vec({0.0}), vec({0.0}), 0.5), std::invalid_argument);
  EXPECT_THROW(compute_weights(vec({1.0}), vec({-0.1}), 0.5), std::invalid_argument);
  EXPECT_THROW(compute_weights(vec({1.0}), vec({1.0}), 1.0), std::invalid_argument);
}

TEST(ComputeWeights, AntiMonotoneInMagnitudeAndEps) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> p_dist(0.05, 0.95);
  for (int trial = 0; trial < 200; ++trial) {
    const double p = p_dist(rng);
    const Vector a = testing::random_vector(10, rng, -2.0, 2.0);
    Vector b = a;
    for (Index i = 0; i < b.size(); ++i) b[i] = std::copysign(std::abs(a[i]) + 0.3, -a[i]);
    const Vector eps = testing::random_vector(10, rng, 1e-3, 1.0);
    const Vector wa = compute_weights(a, eps, p).values();
    const Vector wb = compute_weights(b, eps, p).values();
    const Vector w_big_eps = compute_weights(a, 2.0 * eps, p).values();
    for (Index i = 0; i < a.size(); ++i) {
      EXPECT_GE(wa[i], wb[i]);
      EXPECT_GE(wa[i], w_big_eps[i]);
      EXPECT_GT(wb[i], 0.0);
      EXPECT_TRUE(std::isfinite(wa[i]));
    }
  }
}

TEST(EpsilonState, RejectsBadInput) {
  EXPECT_THROW(EpsilonState(vec({1.0, 0.0}), 0.9, EpsilonStrategy::Geometric),
               std::invalid_argument);
  EXPECT_THROW(EpsilonState(vec({1.0}), 1.0, EpsilonStrategy::Geometric), std::invalid_argument);
  EXPECT_THROW(EpsilonState(vec({1.0}), 0.0, EpsilonStrategy::Geometric), std::invalid_argument);
}

TEST(UpdateEpsilonGeometric, SingleStep) {
  const EpsilonState s(vec({1.0, 1.0}), 0.9, EpsilonStrategy::Geometric);
  EXPECT_TRUE(update_epsilon_geometric(s).eps().isApprox(vec({0.9, 0.9})));
}

TEST(UpdateEpsilonGeometric, FollowsGeometricSequenceExactly) {
  EpsilonState s = EpsilonState::broadcast(1, 1.0, 0.9, EpsilonStrategy::Geometric);
  double expected = 1.0;
  for (int k = 1; k <= 500; ++k) {
    s = update_epsilon_geometric(s);
    expected *= 0.9;
    ASSERT_EQ(s.eps()[0], expected) << "k=" << k;
  }
  // 0.9^500 evaluated at 40 digits.
  EXPECT_NEAR(s.eps()[0] / 1.322070819480806637e-23, 1.0, 1e-12);
  EXPECT_GT(s.eps()[0], 0.0);
}

TEST(UpdateEpsilonGeometric, StaysPositiveAfterUnderflowRange) {
  EpsilonState s = EpsilonState::broadcast(2, 1.0, 0.5, EpsilonStrategy::Geometric);
  for (int k = 0; k < 5000; ++k) s = update_epsilon_geometric(s);
  EXPECT_GT(s.eps().minCoeff(), 0.0);
}

TEST(UpdateEpsilonSmart, FreezesZeroComponents) {
  const EpsilonState s(vec({0.5, 0.5}), 0.9, EpsilonStrategy::SmartReweighting);
  const Vector eps = update_epsilon_smart(s, vec({0.0, 1.2})).eps();
  EXPECT_EQ(eps[0], 0.5);
  EXPECT_DOUBLE_EQ(eps[1], 0.45);
}

TEST(UpdateEpsilonSmart, AllZeroAndAllNonzero) {
  std::mt19937_64 rng(4);
  const Vector eps0 = testing::random_vector(7, rng, 0.1, 2.0);
  const EpsilonState s(eps0, 0.8, EpsilonStrategy::SmartReweighting);
  EXPECT_EQ(update_epsilon_smart(s, Vector::Zero(7)).eps(), eps0);
  const Vector dense = testing::random_vector(7, rng, 0.5, 1.0);
  EXPECT_EQ(update_epsilon_smart(s, dense).eps(), update_epsilon_geometric(s).eps());
}

TEST(UpdateEpsilon, ComponentwiseNonincreasingUnderBothRules) {
  std::mt19937_64 rng(9);
  for (auto strategy : {EpsilonStrategy::Geometric, EpsilonStrategy::SmartReweighting}) {
    EpsilonState s = EpsilonState::broadcast(12, 1.0, 0.9, strategy);
    for (int k = 0; k < 100; ++k) {
      Vector x = testing::random_vector(12, rng);
      for (Index i = 0; i < x.size(); i += 3) x[i] = 0.0;
      const EpsilonState next = update_epsilon(s, x);
      EXPECT_TRUE((next.eps().array() <= s.eps().array()).all());
      EXPECT_TRUE((next.eps().array() > 0.0).all());
      s = next;
    }
  }
}

TEST(EpsilonStrategy, ParsesNames) {
  EXPECT_EQ(parse_epsilon_strategy("sr"), EpsilonStrategy::SmartReweighting);
  EXPECT_EQ(parse_epsilon_strategy("geometric"), EpsilonStrategy::Geometric);
  EXPECT_EQ(to_string(EpsilonStrategy::SmartReweighting), "sr");
  EXPECT_THROW(parse_epsilon_strategy("fast"), std::invalid_argument);
}

}  // namespace
}  // namespace irl1
