#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace edgeaware {

/// Three-channel color on the [0, 255] scale.
struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  constexpr double operator[](int channel) const {
    return channel == 0 ? r : (channel == 1 ? g : b);
  }
  constexpr double& operator[](int channel) {
    return channel == 0 ? r : (channel == 1 ? g : b);
  }

  constexpr Rgb& operator+=(const Rgb& o) {
    r += o.r;
    g += o.g;
    b += o.b;
    return *this;
  }
  constexpr Rgb& operator-=(const Rgb& o) {
    r -= o.r;
    g -= o.g;
    b -= o.b;
    return *this;
  }
  constexpr Rgb& operator*=(double s) {
    r *= s;
    g *= s;
    b *= s;
    return *this;
  }

  friend constexpr Rgb operator+(Rgb a, const Rgb& b) { return a += b; }
  friend constexpr Rgb operator-(Rgb a, const Rgb& b) { return a -= b; }
  friend constexpr Rgb operator*(Rgb a, double s) { return a *= s; }
  friend constexpr Rgb operator*(double s, Rgb a) { return a *= s; }
  friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};

constexpr Rgb gray(double v) { return {v, v, v}; }

inline double squared_color_distance(const Rgb& a, const Rgb& b) {
  const double dr = a.r - b.r;
  const double dg = a.g - b.g;
  const double db = a.b - b.b;
  return dr * dr + dg * dg + db * db;
}

/// Euclidean distance between two colors.
inline double color_distance(const Rgb& a, const Rgb& b) {
  return std::sqrt(squared_color_distance(a, b));
}

struct Pixel {
  int x = 0;
  int y = 0;
  friend constexpr auto operator<=>(const Pixel&, const Pixel&) = default;
};

/// Axis-aligned pixel rectangle [x, x+w) x [y, y+h).
struct Box {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  constexpr bool contains(int px, int py) const {
    return px >= x && px < x + w && py >= y && py < y + h;
  }
  constexpr int right() const { return x + w; }
  constexpr int bottom() const { return y + h; }
  constexpr long area() const { return static_cast<long>(w) * h; }
  friend constexpr bool operator==(const Box&, const Box&) = default;
};

/// Row-major H x W buffer of Rgb values.
class Image {
 public:
  Image(int width, int height, Rgb fill = {});
  Image(int width, int height, std::vector<Rgb> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }
  Box bounds() const { return {0, 0, width_, height_}; }

  bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  const Rgb& at(int x, int y) const { return pixels_[index(x, y)]; }
  Rgb& at(int x, int y) { return pixels_[index(x, y)]; }
  const Rgb& at(Pixel p) const { return at(p.x, p.y); }
  Rgb& at(Pixel p) { return at(p.x, p.y); }

  std::span<const Rgb> pixels() const { return pixels_; }
  std::span<Rgb> pixels() { return pixels_; }
  std::span<const Rgb> row(int y) const {
    return std::span<const Rgb>(pixels_).subspan(index(0, y), width_);
  }
  std::span<Rgb> row(int y) { return std::span<Rgb>(pixels_).subspan(index(0, y), width_); }

  bool same_shape(const Image& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  /// Channel values clamped to [0, 255].
  Image clamped() const;

  /// True when every channel of every pixel is finite.
  bool all_finite() const;

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<Rgb> pixels_;
};

/// Throws DimensionMismatch unless both images share width and height.
void require_same_shape(const Image& a, const Image& b, const char* what);

}  // namespace edgeaware
