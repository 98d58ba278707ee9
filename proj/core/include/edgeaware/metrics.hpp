#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edgeaware/challenge.hpp"
#include "edgeaware/image.hpp"

namespace edgeaware::metrics {

/// Pixel pairs that straddle a known edge. `right(x, y)` flags the pair
/// (x, y)-(x+1, y) and `down(x, y)` the pair (x, y)-(x, y+1).
class EdgeMask {
 public:
  EdgeMask(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  void mark_right(int x, int y);
  void mark_down(int x, int y);
  bool right(int x, int y) const { return right_[index(x, y)] != 0; }
  bool down(int x, int y) const { return down_[index(x, y)] != 0; }
  std::size_t count() const;

  /// Marks every pair crossing the border of each box.
  static EdgeMask from_boxes(int width, int height, const std::vector<Box>& boxes);

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

  int width_;
  int height_;
  std::vector<std::uint8_t> right_;
  std::vector<std::uint8_t> down_;
};

/// Returned by psnr() for identical images.
inline constexpr double kExactPsnr = std::numeric_limits<double>::infinity();

/// 10 log10(255^2 / MSE); kExactPsnr when the images are identical.
double psnr(const Image& test, const Image& reference);

/// Mean HSV saturation (max - min) / max, 0 where max == 0.
double mean_saturation(const Image& image);

/// Fraction of output pixels farther than `tolerance` from every input color.
double novel_color_fraction(const Image& input, const Image& output, double tolerance);

/// Mean cross-edge color distance in `output` over the same in `input`.
double edge_contrast_retention(const Image& input, const Image& output, const EdgeMask& mask);

struct RegionScore {
  Rgb mean;
  /// Root mean squared distance from the region mean color.
  double color_spread = 0.0;
  double mean_saturation = 0.0;
};

struct MetricReport {
  std::optional<double> psnr_db;
  double mean_saturation = 0.0;
  std::optional<double> novel_color_fraction;
  std::optional<double> edge_contrast_retention;
  std::map<std::string, RegionScore> region_scores;

  /// `key = value` lines.
  std::string to_text() const;
  std::string csv_header() const;
  std::string csv_row() const;
};

struct MetricOptions {
  double novel_tolerance = 25.0;
};

/// Full report for `test`; fields needing a reference or regions are filled
/// only when those are supplied.
MetricReport compute_report(const Image& test, const Image* reference,
                            const ChallengeRegions* regions, const MetricOptions& options = {});

/// Edge mask for the Challenge layout: every box border except the blob field.
EdgeMask challenge_edge_mask(int width, int height, const ChallengeRegions& regions);

std::string format_number(double value);

}  // namespace edgeaware::metrics
