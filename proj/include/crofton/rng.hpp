// crofton-lab: seeded uniform generator with a platform-stable double mapping
#pragma once

#include <cstdint>
#include <random>

namespace crofton {

// mt19937_64 output is pinned by the standard, and the shift/scale mapping
// below avoids std::uniform_real_distribution (whose output is
// implementation-defined), so identical seeds give identical doubles on any
// conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform on [0, 1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // uniform on [a, b)
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  std::uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace crofton
