#pragma once

#include <cstdint>
#include <random>

namespace epic {

// Name recorded in model/benchmark headers for reproducibility audits.
inline constexpr const char* kPrngName = "mt19937_64/splitmix64-split";

// splitmix64 step; used to derive independent child seeds from a root seed
// so every consumer (layout, ANN init, SVM pair picks, splits) gets its own
// stream without coupling draw counts.
std::uint64_t splitmix64(std::uint64_t& state);

// Derive a child seed for a named purpose. Same (seed, tag) -> same child.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

// Deterministic RNG wrapper. std::mt19937_64 output is fully specified by
// the standard; the bounded-integer and unit-real draws below avoid
// std::uniform_*_distribution on purpose, because those are implementation
// defined and would break cross-platform reproducibility of the integer
// geometry.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [lo, hi] via rejection sampling. Requires lo <= hi.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Real in [0, 1) with 53 random bits.
  double uniform_real();

  // Real in [lo, hi).
  double uniform_real(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace epic
