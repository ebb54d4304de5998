#pragma once

#include <cstdint>
#include <vector>

namespace parac {

// Stateless counter-based random stream. Every random decision in the
// library is a pure function of (seed, key, counter), which is what makes
// factorization results independent of thread interleaving.
struct SampleStream {
  std::uint64_t seed = 0;

  // Uniform double in [0, 1), identical on every platform.
  static double unit_uniform(std::uint64_t seed, std::int64_t key, std::uint64_t counter);

  double draw(std::int64_t key, std::uint64_t counter) const {
    return unit_uniform(seed, key, counter);
  }
};

// Domain salts so independent consumers of the same user seed never share a
// stream.
inline constexpr std::uint64_t kSaltSampling = 0x73616d706c696e67ULL;
inline constexpr std::uint64_t kSaltOrdering = 0x6f72646572696e67ULL;
inline constexpr std::uint64_t kSaltTieBreak = 0x7469656272656b00ULL;
inline constexpr std::uint64_t kSaltWorkspace = 0x776f726b73706163ULL;
inline constexpr std::uint64_t kSaltRhs = 0x7268735f76656320ULL;
inline constexpr std::uint64_t kSaltCells = 0x63656c6c636f6566ULL;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

// Small sequential engine for shuffles and test-data generation. SplitMix64;
// fully specified, unlike the std distributions.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t s = 0) : state(s) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n >= 1, via rejection.
  std::uint64_t below(std::uint64_t n);
};

// In-place Fisher-Yates shuffle driven by a SplitMix64 engine.
template <typename T>
void shuffle(std::vector<T>& values, SplitMix64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace parac
