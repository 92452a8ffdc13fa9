#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string_view>
#include <vector>

#include "irl1/problem_model.hpp"

namespace irl1 {

/// xoshiro256** seeded through splitmix64. Satisfies
/// UniformRandomBitGenerator, but the helpers below are what instance
/// generation uses, so results do not depend on the standard library's
/// distribution implementations.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, bound) (Lemire's multiply-and-reject).
  std::uint64_t bounded(std::uint64_t bound);
  /// Standard normal via the Marsaglia polar method. The second value of
  /// each accepted pair is cached and returned by the next call.
  double gaussian();

 private:
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct RecoveryInstance {
  Matrix A;
  Vector y;
  Vector x_true;
  std::uint64_t seed = 0;
  Index m = 0;
  Index n = 0;
  Index K = 0;
  double noise_std = 0.0;
};

inline constexpr double kDefaultNoiseStd = 1e-2;

/// y = A x_true + e with A_ij ~ N(0, 1/m), K spikes of +-1 on a uniform
/// support and e_i ~ N(0, noise_std^2). Draw order: A row-major, support,
/// signs, noise.
RecoveryInstance generate_instance(Index m, Index n, Index K, std::uint64_t seed,
                                   double noise_std = kDefaultNoiseStd);

enum class EnsembleProfile { Small, Large };

struct ProfileShape {
  Index m;
  Index n;
  Index K;
};

ProfileShape profile_shape(EnsembleProfile profile);
std::string_view to_string(EnsembleProfile profile);
/// Accepts "small" and "large".
EnsembleProfile parse_profile(std::string_view name);

/// Instance j uses seed base_seed + j.
std::vector<RecoveryInstance> generate_ensemble(EnsembleProfile profile, int count,
                                                std::uint64_t base_seed,
                                                double noise_std = kDefaultNoiseStd);

std::shared_ptr<const LeastSquaresObjective> make_objective(const RecoveryInstance& instance);

}  // namespace irl1
