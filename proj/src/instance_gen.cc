#include "irl1/instance_gen.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace irl1 {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  std::uint64_t state = seed;
  for (auto& word : s_) word = splitmix64(state);
}

Xoshiro256::result_type Xoshiro256::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t Xoshiro256::bounded(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Xoshiro256::bounded: zero bound");
  unsigned __int128 product = static_cast<unsigned __int128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

double Xoshiro256::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

RecoveryInstance generate_instance(Index m, Index n, Index K, std::uint64_t seed,
                                   double noise_std) {
  if (m < 1 || n < 1) throw std::invalid_argument("generate_instance: dimensions must be positive");
  if (K < 1 || K > n) throw std::invalid_argument("generate_instance: need 0 < K <= n");
  if (!(noise_std >= 0.0)) throw std::invalid_argument("generate_instance: negative noise");

  Xoshiro256 rng(seed);
  RecoveryInstance inst;
  inst.seed = seed;
  inst.m = m;
  inst.n = n;
  inst.K = K;
  inst.noise_std = noise_std;

  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  inst.A.resize(m, n);
  for (Index r = 0; r < m; ++r) {
    for (Index c = 0; c < n; ++c) inst.A(r, c) = scale * rng.gaussian();
  }

  // Partial Fisher-Yates: the first K slots end up as a uniform K-subset.
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  for (Index j = 0; j < K; ++j) {
    const auto pick = j + static_cast<Index>(rng.bounded(static_cast<std::uint64_t>(n - j)));
    std::swap(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(pick)]);
  }
  inst.x_true = Vector::Zero(n);
  for (Index j = 0; j < K; ++j) {
    inst.x_true[order[static_cast<std::size_t>(j)]] = (rng() >> 63) ? 1.0 : -1.0;
  }

  inst.y = inst.A * inst.x_true;
  if (noise_std > 0.0) {
    for (Index r = 0; r < m; ++r) inst.y[r] += noise_std * rng.gaussian();
  }
  return inst;
}

ProfileShape profile_shape(EnsembleProfile profile) {
  switch (profile) {
    case EnsembleProfile::Small:
      return {256, 512, 64};
    case EnsembleProfile::Large:
      return {1024, 2048, 256};
  }
  throw std::logic_error("profile_shape: bad profile");
}

std::string_view to_string(EnsembleProfile profile) {
  return profile == EnsembleProfile::Small ? "small" : "large";
}

EnsembleProfile parse_profile(std::string_view name) {
  if (name == "small") return EnsembleProfile::Small;
  if (name == "large") return EnsembleProfile::Large;
  throw std::invalid_argument("unknown profile: " + std::string(name));
}

std::vector<RecoveryInstance> generate_ensemble(EnsembleProfile profile, int count,
                                                std::uint64_t base_seed,
                                                double noise_std) {
  if (count < 1) throw std::invalid_argument("generate_ensemble: count must be positive");
  const ProfileShape shape = profile_shape(profile);
  std::vector<RecoveryInstance> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    out.push_back(generate_instance(shape.m, shape.n, shape.K,
                                    base_seed + static_cast<std::uint64_t>(j), noise_std));
  }
  return out;
}

std::shared_ptr<const LeastSquaresObjective> make_objective(const RecoveryInstance& instance) {
  return std::make_shared<const LeastSquaresObjective>(instance.A, instance.y);
}

}  // namespace irl1
