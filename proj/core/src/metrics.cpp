#include "edgeaware/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "edgeaware/errors.hpp"

namespace edgeaware::metrics {

namespace {

double saturation(const Rgb& c) {
  const double hi = std::max({c.r, c.g, c.b});
  const double lo = std::min({c.r, c.g, c.b});
  if (hi <= 0.0) return 0.0;
  return std::clamp((hi - lo) / hi, 0.0, 1.0);
}

struct CellKey {
  long r, g, b;
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.r) * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::size_t>(k.g) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(k.b) + 0x94D049BB133111EBull + (h << 6) + (h >> 2);
    return h;
  }
};

/// Uniform grid over color space; each cell lists the distinct colors in it.
class ColorGrid {
 public:
  ColorGrid(const Image& palette, double cell) : cell_(cell) {
    for (const Rgb& c : palette.pixels()) {
      auto& bucket = cells_[key(c)];
      if (std::find(bucket.begin(), bucket.end(), c) == bucket.end()) bucket.push_back(c);
    }
  }

  /// True when some palette color lies within `tolerance` of `c`.
  bool has_neighbor(const Rgb& c, double tolerance) const {
    const long reach = static_cast<long>(std::ceil(tolerance / cell_));
    const CellKey k = key(c);
    for (long dr = -reach; dr <= reach; ++dr) {
      for (long dg = -reach; dg <= reach; ++dg) {
        for (long db = -reach; db <= reach; ++db) {
          const auto it = cells_.find({k.r + dr, k.g + dg, k.b + db});
          if (it == cells_.end()) continue;
          for (const Rgb& p : it->second) {
            if (color_distance(p, c) <= tolerance) return true;
          }
        }
      }
    }
    return false;
  }

 private:
  CellKey key(const Rgb& c) const {
    return {static_cast<long>(std::floor(c.r / cell_)), static_cast<long>(std::floor(c.g / cell_)),
            static_cast<long>(std::floor(c.b / cell_))};
  }

  double cell_;
  std::unordered_map<CellKey, std::vector<Rgb>, CellHash> cells_;
};

RegionScore score_region(const Image& image, const Box& box) {
  RegionScore score;
  const int x0 = std::max(0, box.x);
  const int y0 = std::max(0, box.y);
  const int x1 = std::min(image.width(), box.right());
  const int y1 = std::min(image.height(), box.bottom());
  const long count = static_cast<long>(std::max(0, x1 - x0)) * std::max(0, y1 - y0);
  if (count == 0) return score;

  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      score.mean += image.at(x, y);
      score.mean_saturation += saturation(image.at(x, y));
    }
  }
  score.mean *= 1.0 / static_cast<double>(count);
  score.mean_saturation /= static_cast<double>(count);
  double spread = 0.0;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) spread += squared_color_distance(image.at(x, y), score.mean);
  }
  score.color_spread = std::sqrt(spread / static_cast<double>(count));
  return score;
}

std::vector<std::pair<std::string, std::string>> flatten(const MetricReport& report) {
  std::vector<std::pair<std::string, std::string>> kv;
  if (report.psnr_db) {
    kv.emplace_back("psnr_db", std::isinf(*report.psnr_db) ? "exact" : format_number(*report.psnr_db));
  }
  kv.emplace_back("mean_saturation", format_number(report.mean_saturation));
  if (report.novel_color_fraction) {
    kv.emplace_back("novel_color_fraction", format_number(*report.novel_color_fraction));
  }
  if (report.edge_contrast_retention) {
    kv.emplace_back("edge_contrast_retention", format_number(*report.edge_contrast_retention));
  }
  for (const auto& [name, score] : report.region_scores) {
    const std::string prefix = "region." + name + ".";
    kv.emplace_back(prefix + "mean_r", format_number(score.mean.r));
    kv.emplace_back(prefix + "mean_g", format_number(score.mean.g));
    kv.emplace_back(prefix + "mean_b", format_number(score.mean.b));
    kv.emplace_back(prefix + "color_spread", format_number(score.color_spread));
    kv.emplace_back(prefix + "mean_saturation", format_number(score.mean_saturation));
  }
  return kv;
}

}  // namespace

EdgeMask::EdgeMask(int width, int height)
    : width_(width),
      height_(height),
      right_(static_cast<std::size_t>(width) * height, 0),
      down_(static_cast<std::size_t>(width) * height, 0) {
  if (width < 1 || height < 1) throw ParamError("edge mask dimensions must be >= 1");
}

void EdgeMask::mark_right(int x, int y) {
  if (x < 0 || y < 0 || x + 1 >= width_ || y >= height_) return;
  right_[index(x, y)] = 1;
}

void EdgeMask::mark_down(int x, int y) {
  if (x < 0 || y < 0 || x >= width_ || y + 1 >= height_) return;
  down_[index(x, y)] = 1;
}

std::size_t EdgeMask::count() const {
  return static_cast<std::size_t>(std::count(right_.begin(), right_.end(), 1) +
                                  std::count(down_.begin(), down_.end(), 1));
}

EdgeMask EdgeMask::from_boxes(int width, int height, const std::vector<Box>& boxes) {
  EdgeMask mask(width, height);
  for (const Box& b : boxes) {
    for (int y = b.y; y < b.bottom(); ++y) {
      mask.mark_right(b.x - 1, y);
      mask.mark_right(b.right() - 1, y);
    }
    for (int x = b.x; x < b.right(); ++x) {
      mask.mark_down(x, b.y - 1);
      mask.mark_down(x, b.bottom() - 1);
    }
  }
  return mask;
}

double psnr(const Image& test, const Image& reference) {
  require_same_shape(test, reference, "psnr");
  double squared = 0.0;
  const auto a = test.pixels();
  const auto b = reference.pixels();
  for (std::size_t i = 0; i < a.size(); ++i) squared += squared_color_distance(a[i], b[i]);
  if (squared == 0.0) return kExactPsnr;
  const double mse = squared / (3.0 * static_cast<double>(a.size()));
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double mean_saturation(const Image& image) {
  double total = 0.0;
  for (const Rgb& c : image.pixels()) total += saturation(c);
  return total / static_cast<double>(image.size());
}

double novel_color_fraction(const Image& input, const Image& output, double tolerance) {
  require_same_shape(input, output, "novel_color_fraction");
  if (!(tolerance >= 0.0)) throw ParamError("tolerance must be >= 0");
  const ColorGrid grid(input, std::max(tolerance, 1.0));
  std::size_t novel = 0;
  for (const Rgb& c : output.pixels()) {
    if (!grid.has_neighbor(c, tolerance)) ++novel;
  }
  return static_cast<double>(novel) / static_cast<double>(output.size());
}

double edge_contrast_retention(const Image& input, const Image& output, const EdgeMask& mask) {
  require_same_shape(input, output, "edge_contrast_retention");
  if (mask.width() != input.width() || mask.height() != input.height()) {
    throw DimensionMismatch("edge mask does not match image dimensions");
  }
  double before = 0.0;
  double after = 0.0;
  std::size_t pairs = 0;
  for (int y = 0; y < input.height(); ++y) {
    for (int x = 0; x < input.width(); ++x) {
      if (mask.right(x, y)) {
        before += color_distance(input.at(x, y), input.at(x + 1, y));
        after += color_distance(output.at(x, y), output.at(x + 1, y));
        ++pairs;
      }
      if (mask.down(x, y)) {
        before += color_distance(input.at(x, y), input.at(x, y + 1));
        after += color_distance(output.at(x, y), output.at(x, y + 1));
        ++pairs;
      }
    }
  }
  if (pairs == 0) throw EmptyMask("edge mask marks no pixel pairs");
  if (before == 0.0) throw ParamError("input has zero contrast across every masked edge");
  return after / before;
}

EdgeMask challenge_edge_mask(int width, int height, const ChallengeRegions& regions) {
  std::vector<Box> boxes;
  for (const NamedBox& nb : regions.boxes) {
    if (nb.name != "blob_field") boxes.push_back(nb.box);
  }
  return EdgeMask::from_boxes(width, height, boxes);
}

MetricReport compute_report(const Image& test, const Image* reference,
                            const ChallengeRegions* regions, const MetricOptions& options) {
  MetricReport report;
  report.mean_saturation = mean_saturation(test);
  if (reference != nullptr) {
    report.psnr_db = psnr(test, *reference);
    report.novel_color_fraction = novel_color_fraction(*reference, test, options.novel_tolerance);
  }
  if (regions != nullptr) {
    for (const NamedBox& nb : regions->boxes) report.region_scores[nb.name] = score_region(test, nb.box);
    if (reference != nullptr) {
      const EdgeMask mask = challenge_edge_mask(test.width(), test.height(), *regions);
      if (mask.count() > 0) {
        report.edge_contrast_retention = edge_contrast_retention(*reference, test, mask);
      }
    }
  }
  return report;
}

std::string MetricReport::to_text() const {
  std::ostringstream out;
  for (const auto& [k, v] : flatten(*this)) out << k << " = " << v << '\n';
  return out.str();
}

std::string MetricReport::csv_header() const {
  std::string out;
  for (const auto& [k, v] : flatten(*this)) out += (out.empty() ? "" : ",") + k;
  return out;
}

std::string MetricReport::csv_row() const {
  std::string out;
  bool first = true;
  for (const auto& [k, v] : flatten(*this)) {
    out += (first ? "" : ",") + v;
    first = false;
  }
  return out;
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

}  // namespace edgeaware::metrics
