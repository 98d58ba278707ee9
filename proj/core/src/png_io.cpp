#include "edgeaware/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "edgeaware/errors.hpp"

namespace edgeaware {

namespace {

// Frees the libpng simplified-API state on every exit path.
struct PngImageGuard {
  png_image* image;
  ~PngImageGuard() { png_image_free(image); }
};

bool has_png_signature(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  png_byte header[8] = {};
  in.read(reinterpret_cast<char*>(header), sizeof header);
  return in.gcount() == 8 && png_sig_cmp(header, 0, 8) == 0;
}

}  // namespace

Image load_png(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw IoError("cannot open PNG file: " + path.string());
  }
  if (!has_png_signature(path)) {
    throw FormatError("not a PNG file: " + path.string());
  }

  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  PngImageGuard guard{&image};
  if (png_image_begin_read_from_file(&image, path.c_str()) == 0) {
    throw IoError("cannot read PNG header of " + path.string() + ": " + image.message);
  }
  if ((image.format & PNG_FORMAT_FLAG_LINEAR) != 0) {
    throw FormatError("unsupported PNG bit depth (16-bit) in " + path.string());
  }

  image.format = PNG_FORMAT_RGBA;
  const int width = static_cast<int>(image.width);
  const int height = static_cast<int>(image.height);
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr) == 0) {
    throw IoError("cannot decode PNG " + path.string() + ": " + image.message);
  }

  std::vector<Rgb> pixels(static_cast<std::size_t>(width) * height);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = {static_cast<double>(buffer[4 * i]), static_cast<double>(buffer[4 * i + 1]),
                 static_cast<double>(buffer[4 * i + 2])};
  }
  return Image(width, height, std::move(pixels));
}

void save_png(const Image& image, const std::filesystem::path& path) {
  std::vector<std::uint8_t> buffer;
  buffer.reserve(image.size() * 3);
  for (const Rgb& px : image.pixels()) {
    for (int c = 0; c < 3; ++c) {
      const double v = std::isfinite(px[c]) ? std::clamp(px[c], 0.0, 255.0) : 0.0;
      buffer.push_back(static_cast<std::uint8_t>(std::lround(v)));
    }
  }

  png_image out{};
  out.version = PNG_IMAGE_VERSION;
  out.width = static_cast<png_uint_32>(image.width());
  out.height = static_cast<png_uint_32>(image.height());
  out.format = PNG_FORMAT_RGB;
  PngImageGuard guard{&out};
  if (png_image_write_to_file(&out, path.c_str(), 0, buffer.data(), 0, nullptr) == 0) {
    throw IoError("cannot write PNG " + path.string() + ": " + out.message);
  }
}

}  // namespace edgeaware
