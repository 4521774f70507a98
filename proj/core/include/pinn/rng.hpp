#pragma once

#include <cstdint>
#include <random>

namespace pinn {

// mt19937_64 with a fixed 53-bit-mantissa mapping to [0,1).  The engine's
// output sequence is pinned by the standard, and the mapping avoids
// std::uniform_real_distribution, whose stream is implementation-defined —
// together they make every seeded draw bit-identical across platforms.
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : gen_(seed) {}

  double next() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace pinn
