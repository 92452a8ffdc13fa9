#pragma once

#include <string_view>

#include "irl1/problem_model.hpp"

namespace irl1 {

/// Strictly positive, finite IRL1 weights.
class WeightVector {
 public:
  explicit WeightVector(Vector w);

  const Vector& values() const { return w_; }
  double operator[](Index i) const { return w_[i]; }
  Index size() const { return w_.size(); }

 private:
  Vector w_;
};

/// w_i = p (|x_i| + eps_i)^(p-1). Throws std::invalid_argument if some
/// eps_i <= 0 or p is outside (0, 1).
WeightVector compute_weights(const Vector& x, const Vector& eps, double p);

enum class EpsilonStrategy { Geometric, SmartReweighting };

std::string_view to_string(EpsilonStrategy strategy);
/// Accepts "geometric" and "sr".
EpsilonStrategy parse_epsilon_strategy(std::string_view name);

/// Smoothing vector eps together with its shrink factor and update rule.
/// Components stay strictly positive and never increase.
class EpsilonState {
 public:
  EpsilonState(Vector eps, double mu, EpsilonStrategy strategy);
  static EpsilonState broadcast(Index n, double eps0, double mu,
                                EpsilonStrategy strategy);

  const Vector& eps() const { return eps_; }
  double mu() const { return mu_; }
  EpsilonStrategy strategy() const { return strategy_; }

 private:
  Vector eps_;
  double mu_;
  EpsilonStrategy strategy_;
};

/// eps' = mu * eps.
EpsilonState update_epsilon_geometric(const EpsilonState& state);

/// eps'_i = eps_i where x_new_i == 0 exactly, mu * eps_i elsewhere.
EpsilonState update_epsilon_smart(const EpsilonState& state,
                                  const Vector& x_new);

/// Applies the rule selected by state.strategy().
EpsilonState update_epsilon(const EpsilonState& state, const Vector& x_new);

}  // namespace irl1
