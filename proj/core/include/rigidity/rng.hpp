#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "rigidity/vec.hpp"

namespace rigidity {

/// Seeded RNG wrapper. Every randomized operation takes an explicit seed so
/// runs are reproducible; no global state.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  int64_t uniform_int(int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(eng_);
  }

  /// Uniform direction on the unit sphere S^{n-1}.
  Vec sphere_direction(int n) {
    Vec v(n);
    double len2 = 0;
    do {
      len2 = 0;
      for (int i = 0; i < n; ++i) {
        v[i] = gaussian();
        len2 += v[i] * v[i];
      }
    } while (len2 < 1e-24);
    return v * (1.0 / std::sqrt(len2));
  }

 private:
  std::mt19937_64 eng_;
};

/// Halton sequence, used for low-discrepancy sweeps over spheres and caps.
inline double halton(uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  uint64_t i = index;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % static_cast<uint64_t>(base));
    i /= static_cast<uint64_t>(base);
  }
  return r;
}

}  // namespace rigidity
