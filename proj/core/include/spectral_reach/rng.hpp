#pragma once

#include <cstdint>
#include <random>

namespace spectral_reach {

/// Seeded random source used by every stochastic routine.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Seeds are expanded with SplitMix64 so that (seed, stream) pairs
/// map to well-separated engine states. All variate conversions are done here
/// rather than through <random> distributions, whose algorithms are
/// implementation-defined; this keeps results identical across standard
/// libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, bound). Unbiased (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal variate (Box-Muller, one value per call).
  double normal();

  /// Number of trials up to and including the first success, success prob p in (0, 1].
  std::uint64_t geometric(double p);

private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive substream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Deterministic seed for substream `index` of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace spectral_reach
