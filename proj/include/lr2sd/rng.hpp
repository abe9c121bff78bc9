#pragma once

#include <cstdint>
#include <random>

#include "lr2sd/types.hpp"

namespace lr2sd {

/// Mixes a base seed and a stream index into an independent 64-bit seed
/// (two rounds of the splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t stream);

/// Seeded random source with portable, bit-reproducible transforms.
///
/// std::mt19937_64 output is fixed by the standard; the distribution
/// transforms are implemented here because the standard library's are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer on [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);

  // Circular complex Gaussian with unit variance (real and imaginary parts
  // each N(0, 1/2)), Box-Muller.
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace lr2sd
