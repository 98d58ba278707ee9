#pragma once

#include <cstdint>
#include <random>

#include "edgeaware/image.hpp"

namespace edgeaware {

/// Seedable generator with a fixed cross-platform stream: mt19937_64 for the
/// raw bits, 53-bit mantissa uniforms and Box-Muller normals on top. The
/// standard distributions are avoided because their output is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  /// Standard normal.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Adds independent N(0, sigma^2) noise to every channel, clamping to
/// [0, 255]. sigma == 0 returns the input unchanged.
Image add_gaussian_noise(const Image& image, double sigma, std::uint64_t seed);

}  // namespace edgeaware
