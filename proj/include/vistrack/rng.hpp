#pragma once

#include <cstdint>
#include <random>

namespace vistrack {

struct RngSeed {
  std::uint64_t value = 0;
};

// Single seedable generator owned by a filter run or a simulation. Identical seeds give
// identical streams within one build; distributions are the standard library's.
class Rng {
 public:
  explicit Rng(RngSeed seed = {}) : engine_(seed.value) {}

  /// Uniform on [lo, hi); returns lo exactly when lo == hi.
  double uniform(double lo, double hi) {
    if (lo == hi) {
      return lo;
    }
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  double normal(double mean, double stddev) {
    if (stddev == 0.0) {
      return mean;
    }
    return std::normal_distribution<double>(mean, stddev)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vistrack
