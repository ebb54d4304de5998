#include "parac/rng.hpp"

namespace parac {

namespace {

inline std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double SampleStream::unit_uniform(std::uint64_t seed, std::int64_t key, std::uint64_t counter) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(key) + 1);
  x = mix(x);
  x = mix(x ^ (0xd1b54a32d192ed03ULL * (counter + 1)));
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  return mix(seed ^ mix(salt));
}

std::uint64_t SplitMix64::below(std::uint64_t n) {
  if (n <= 1) return 0;
  // Reject the tail that would bias the modulo.
  const std::uint64_t bound = n * (~0ULL / n);
  std::uint64_t r = next();
  while (r >= bound) r = next();
  return r % n;
}

}  // namespace parac
