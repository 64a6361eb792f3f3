#pragma once

// Reproducible random streams.
//
// Every bootstrap replicate owns an independent std::mt19937_64 engine whose
// seed is the i-th output (0-based) of a SplitMix64 sequence started at the
// master seed. Because SplitMix64 is a counter-based generator, the seed of
// replicate i is computed in O(1) and replicates can be evaluated in any
// order, on any number of threads, with bit-identical results.
//
// Row indices are drawn with `uniform_index`, an unbiased rejection sampler
// (reject x < 2^64 mod n, then return x mod n). std::uniform_int_distribution is
// avoided because its mapping is implementation-defined.

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>

namespace iceinfer {

namespace detail {
inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_finalize(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Reference SplitMix64 (Steele, Lea, Flood 2014).
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr result_type operator()() noexcept {
    state_ += detail::kSplitMixGamma;
    return detail::splitmix64_finalize(state_);
  }

  /// Output number `index` (0-based) of a fresh sequence started at `seed`.
  static constexpr result_type at(std::uint64_t seed,
                                  std::uint64_t index) noexcept {
    return detail::splitmix64_finalize(seed +
                                       (index + 1) * detail::kSplitMixGamma);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

 private:
  std::uint64_t state_;
};

using Engine = std::mt19937_64;

inline Engine stream_engine(std::uint64_t master_seed, std::uint64_t stream) {
  return Engine{SplitMix64::at(master_seed, stream)};
}

/// Unbiased draw from {0, ..., n-1}; n must be positive.
inline std::uint64_t uniform_index(Engine& engine, std::uint64_t n) {
  const std::uint64_t reject_below = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t x = engine();
    if (x >= reject_below) return x % n;
  }
}

/// Worker count for parallel loops: the hardware concurrency, capped by
/// ICE_THREADS when that is a positive integer. Never affects results.
inline unsigned default_thread_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("ICE_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap > 0 && static_cast<unsigned long>(cap) < hw)
        return static_cast<unsigned>(cap);
    } catch (...) {
    }
  }
  return hw;
}

}  // namespace iceinfer
