#include "irl1/reweighting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace irl1 {

WeightVector::WeightVector(Vector w) : w_(std::move(w)) {
  for (Index i = 0; i < w_.size(); ++i) {
    if (!(w_[i] > 0.0) || !std::isfinite(w_[i])) {
      throw std::invalid_argument("WeightVector: weights must be positive and finite");
    }
  }
}

WeightVector compute_weights(const Vector& x, const Vector& eps, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("compute_weights: p must lie in (0, 1)");
  }
  if (x.size() != eps.size()) {
    throw std::invalid_argument("compute_weights: size mismatch");
  }
  Vector w(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    if (!(eps[i] > 0.0)) {
      throw std::invalid_argument("compute_weights: eps must be positive");
    }
    w[i] = p * std::pow(std::abs(x[i]) + eps[i], p - 1.0);
  }
  return WeightVector(std::move(w));
}

std::string_view to_string(EpsilonStrategy strategy) {
  switch (strategy) {
    case EpsilonStrategy::Geometric:
      return "geometric";
    case EpsilonStrategy::SmartReweighting:
      return "sr";
  }
  return "unknown";
}

EpsilonStrategy parse_epsilon_strategy(std::string_view name) {
  if (name == "geometric") return EpsilonStrategy::Geometric;
  if (name == "sr") return EpsilonStrategy::SmartReweighting;
  throw std::invalid_argument("unknown epsilon strategy: " + std::string(name));
}

EpsilonState::EpsilonState(Vector eps, double mu, EpsilonStrategy strategy)
    : eps_(std::move(eps)), mu_(mu), strategy_(strategy) {
  if (!(mu_ > 0.0 && mu_ < 1.0)) {
    throw std::invalid_argument("EpsilonState: mu must lie in (0, 1)");
  }
  for (Index i = 0; i < eps_.size(); ++i) {
    if (!(eps_[i] > 0.0) || !std::isfinite(eps_[i])) {
      throw std::invalid_argument("EpsilonState: eps must be positive");
    }
  }
}

EpsilonState EpsilonState::broadcast(Index n, double eps0, double mu,
                                     EpsilonStrategy strategy) {
  return EpsilonState(Vector::Constant(n, eps0), mu, strategy);
}

namespace {

// Long geometric runs would eventually underflow to zero; the smallest
// normal double keeps every component strictly positive.
double shrink(double eps, double mu) {
  return std::max(mu * eps, std::numeric_limits<double>::min());
}

}  // namespace

EpsilonState update_epsilon_geometric(const EpsilonState& state) {
  Vector eps = state.eps();
  for (Index i = 0; i < eps.size(); ++i) eps[i] = shrink(eps[i], state.mu());
  return EpsilonState(std::move(eps), state.mu(), state.strategy());
}

EpsilonState update_epsilon_smart(const EpsilonState& state,
                                  const Vector& x_new) {
  if (x_new.size() != state.eps().size()) {
    throw std::invalid_argument("update_epsilon_smart: size mismatch");
  }
  Vector eps = state.eps();
  for (Index i = 0; i < eps.size(); ++i) {
    if (x_new[i] != 0.0) eps[i] = shrink(eps[i], state.mu());
  }
  return EpsilonState(std::move(eps), state.mu(), state.strategy());
}

EpsilonState update_epsilon(const EpsilonState& state, const Vector& x_new) {
  switch (state.strategy()) {
    case EpsilonStrategy::Geometric:
      return update_epsilon_geometric(state);
    case EpsilonStrategy::SmartReweighting:
      return update_epsilon_smart(state, x_new);
  }
  throw std::logic_error("update_epsilon: bad strategy");
}

}  // namespace irl1
