#include "edgeaware/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "edgeaware/errors.hpp"

namespace edgeaware {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Image add_gaussian_noise(const Image& image, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ParamError("noise sigma must be finite and >= 0");
  }
  if (sigma == 0.0) return image;
  Rng rng(seed);
  Image out = image;
  for (Rgb& px : out.pixels()) {
    for (int c = 0; c < 3; ++c) px[c] = std::clamp(px[c] + sigma * rng.normal(), 0.0, 255.0);
  }
  return out;
}

}  // namespace edgeaware
