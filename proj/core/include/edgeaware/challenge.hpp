#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "edgeaware/image.hpp"

namespace edgeaware {

struct ChallengeSpec {
  int width = 256;
  int height = 256;
  std::uint64_t seed = 0;
  /// Standard deviation of the zero-mean noise in the six control rectangles.
  double noise_sigma_control = 6.0;
  /// Noise amplitude inside the four black rectangles and the blob field.
  double noise_amplitude_blocks = 60.0;
};

struct NamedBox {
  std::string name;
  Box box;
  friend bool operator==(const NamedBox&, const NamedBox&) = default;
};

/// Labeled bounding boxes of the Challenge layout.
///
/// Names: `gradient`, `separator`, `orange`, `blob_field`, `noisy_red`,
/// `noisy_green`, `noisy_yellow`, `noisy_purple`, `control_0` .. `control_5`.
struct ChallengeRegions {
  std::vector<NamedBox> boxes;

  std::optional<Box> find(std::string_view name) const;
  Box at(std::string_view name) const;
  /// The four black rectangles filled with colored noise.
  std::vector<NamedBox> noisy_rects() const;
  /// The six low-noise control rectangles.
  std::vector<NamedBox> control_rects() const;
};

struct Challenge {
  Image image;
  ChallengeRegions regions;
};

/// Palette used by the generator.
namespace challenge_palette {
inline constexpr Rgb white{255, 255, 255};
inline constexpr Rgb red{255, 0, 0};
inline constexpr Rgb orange{255, 140, 0};
inline constexpr Rgb black{0, 0, 0};
inline constexpr Rgb noisy_red{230, 30, 30};
inline constexpr Rgb noisy_green{30, 210, 40};
inline constexpr Rgb noisy_yellow{235, 220, 30};
inline constexpr Rgb noisy_purple{150, 40, 210};
inline constexpr Rgb controls[6] = {
    {40, 70, 200}, {40, 160, 70}, {230, 200, 40}, {190, 50, 160}, {40, 180, 200}, {140, 90, 40},
};
inline constexpr Rgb blobs[6] = {
    {255, 120, 200}, {80, 220, 255}, {180, 255, 90}, {255, 190, 60}, {120, 140, 255}, {90, 255, 190},
};
}  // namespace challenge_palette

/// Deterministic synthetic test image. Throws SpecError below 128x128.
Challenge generate_challenge(const ChallengeSpec& spec);

/// `name = x,y,w,h` per line.
void write_regions(const ChallengeRegions& regions, const std::filesystem::path& path);
ChallengeRegions read_regions(const std::filesystem::path& path);
std::string format_regions(const ChallengeRegions& regions);
ChallengeRegions parse_regions(std::string_view text);

}  // namespace edgeaware
