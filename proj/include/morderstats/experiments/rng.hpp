#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace morderstats {

/// SplitMix64: a counter-based generator whose i-th output is a fixed mixing
/// function of seed + i·γ. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  result_type operator()() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
};

enum class DatasetRole : int { train = 0 };

/// Role of the j-th test set (j >= 0).
constexpr int test_role(int j) noexcept { return j + 1; }

/// Seed of the stream for one dataset: a SplitMix fold of every field.
constexpr std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t n, std::uint64_t p,
                                    std::uint64_t replicate, std::uint64_t role) noexcept {
  std::uint64_t h = SplitMix64::mix(base_seed ^ 0x6d6f726465727374ULL);
  for (std::uint64_t field : {n, p, replicate, role}) h = SplitMix64::mix(h ^ (field + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
  return h;
}

}  // namespace morderstats
