#pragma once

#include <filesystem>

#include "edgeaware/image.hpp"

namespace edgeaware {

/// Reads an 8-bit PNG. Alpha is dropped, grayscale is expanded to three
/// equal channels. Throws IoError for missing or damaged files and
/// FormatError for 16-bit data or a non-PNG signature.
Image load_png(const std::filesystem::path& path);

/// Writes 8-bit RGB; channels are clamped to [0, 255] and rounded.
void save_png(const Image& image, const std::filesystem::path& path);

}  // namespace edgeaware
