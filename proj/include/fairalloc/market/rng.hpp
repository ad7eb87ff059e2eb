#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fairalloc::market {

/// Reproducible 64-bit stream: std::mt19937_64 (whose output sequence is fixed
/// by the C++ standard) with uniforms built from the top 53 bits, so draws are
/// identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// True with probability p.
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// Per-trial substream seed: SplitMix64 chained over
/// (master_seed, fnv1a(env_id), fnv1a(policy_id), horizon, trial).
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view env_id,
                          std::string_view policy_id, std::uint64_t horizon, std::uint64_t trial);

}  // namespace fairalloc::market
