#pragma once

#include <cstdint>
#include <random>

#include "torusrot/geom.hpp"

namespace torusrot {

// Seeded generator with a platform-independent mapping to doubles.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  // Uniform on the 2^-32 grid of [0, 1): sums with small dyadic offsets stay exact.
  double dyadic32() { return static_cast<double>(engine_() >> 32) * 0x1.0p-32; }
  Vec2 unit_square() {
    const double x = uniform();
    return {x, uniform()};
  }
  Vec2 in_box(const Box& b) {
    const double x = uniform(b.x0, b.x1);
    return {x, uniform(b.y0, b.y1)};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace torusrot
