#include "edgeaware/image.hpp"

#include <algorithm>
#include <string>

#include "edgeaware/errors.hpp"

namespace edgeaware {

namespace {

void check_dimensions(int width, int height) {
  if (width < 1 || height < 1) {
    throw ParamError("image dimensions must be at least 1x1, got " + std::to_string(width) + "x" +
                     std::to_string(height));
  }
}

}  // namespace

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height) {
  check_dimensions(width, height);
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

Image::Image(int width, int height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dimensions(width, height);
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw DimensionMismatch("pixel buffer holds " + std::to_string(pixels_.size()) +
                            " values, expected " + std::to_string(width) + "x" +
                            std::to_string(height));
  }
}

Image Image::clamped() const {
  Image out = *this;
  for (Rgb& px : out.pixels_) {
    for (int c = 0; c < 3; ++c) px[c] = std::clamp(px[c], 0.0, 255.0);
  }
  return out;
}

bool Image::all_finite() const {
  return std::all_of(pixels_.begin(), pixels_.end(), [](const Rgb& px) {
    return std::isfinite(px.r) && std::isfinite(px.g) && std::isfinite(px.b);
  });
}

void require_same_shape(const Image& a, const Image& b, const char* what) {
  if (!a.same_shape(b)) {
    throw DimensionMismatch(std::string(what) + ": " + std::to_string(a.width()) + "x" +
                            std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                            std::to_string(b.height()));
  }
}

}  // namespace edgeaware
