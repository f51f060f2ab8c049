#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace cfuzz {

// Seeded generator with platform-independent derived draws. std::mt19937_64
// output is fixed by the standard; the distributions in <random> are not, so
// uniform and weighted draws are computed here from raw engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Index drawn with probability weights[i] / sum(weights). Weights must be
  // non-negative with a positive sum.
  std::size_t weighted_index(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t fnv1a64(std::string_view bytes);

// Stable 64-bit mix of a base seed with a string salt (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::string_view salt);

}  // namespace cfuzz
