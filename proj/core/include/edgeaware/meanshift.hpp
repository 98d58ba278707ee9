#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "edgeaware/image.hpp"
#include "edgeaware/report.hpp"

namespace edgeaware::meanshift {

struct MeanShiftConfig {
  double h_s = 5.0;
  double h_r = 45.0;
  /// Snap threshold on squared normalized color distance.
  double tau = 0.5;
  /// Iteration stops once the shift, measured in the bandwidth-normalized
  /// joint space (x / h_s, y / h_s, rgb / h_r), drops below this.
  double convergence_eps = 0.01;
  int max_iterations = 100;
  bool edge_aware = false;
  bool use_cache = true;

  void validate() const;
};

/// Joint spatial-range state of an in-flight mean shift trajectory.
struct MeanShiftPoint {
  double x = 0.0;
  double y = 0.0;
  Rgb range;

  /// Integer pixel nearest to the spatial component, clamped to the image.
  Pixel nearest_pixel(const Image& image) const;
};

/// Euclidean distance in the joint (x, y, r, g, b) space.
double joint_distance(const MeanShiftPoint& a, const MeanShiftPoint& b);

/// Euclidean distance with spatial axes divided by h_s and color by h_r.
double normalized_joint_distance(const MeanShiftPoint& a, const MeanShiftPoint& b, double h_s,
                                 double h_r);

/// Per-pixel mode colors recorded by earlier trajectories of the same run.
class ModeCache {
 public:
  ModeCache(int width, int height);

  std::optional<Rgb> lookup(Pixel p) const;
  /// First write wins; later writes to the same pixel are ignored.
  void store(Pixel p, const Rgb& mode);
  std::size_t filled() const { return filled_; }

 private:
  int width_;
  std::vector<Rgb> modes_;
  std::vector<unsigned char> set_;
  std::size_t filled_ = 0;
};

/// One weighted-mean update of both components, weight =
/// exp(-|p - s|^2 / 2 h_s^2) * exp(-|I_p - s_r|^2 / 2 h_r^2), summed over the
/// square window of half-width 3 h_s around the spatial component.
/// Throws DegenerateWeight when the total weight falls below 1e-12.
MeanShiftPoint mean_shift_step(const Image& image, const MeanShiftPoint& state, double h_s,
                               double h_r);

struct SnapResult {
  Pixel pixel;
  /// No window pixel satisfied |I_p - s_r|^2 / h_r^2 < tau; the closest color
  /// was taken instead.
  bool fallback = false;
};

/// Pixel of similar color nearest to the spatial mean `(mean.x, mean.y)`,
/// searched over the window of half-width `search_half_width`. Ties go to
/// the first pixel in row-major order.
SnapResult snap_to_feature(const Image& image, const MeanShiftPoint& mean, double h_r, double tau,
                           int search_half_width);

struct ModeResult {
  Rgb mode;
  /// mean_shift_step evaluations performed by this call.
  int iterations = 0;
  bool converged = false;
  bool cache_hit = false;
  std::size_t snap_fallbacks = 0;
};

/// Follows the trajectory from `start` to a mode. With `config.use_cache`,
/// `cache` must be non-null; a cached mode on the trajectory ends the search.
ModeResult find_mode(const Image& image, Pixel start, const MeanShiftConfig& config,
                     ModeCache* cache);

/// Replaces each pixel by the color of its mode. Cached runs are strictly
/// sequential in row-major order.
FilterReport mean_shift_filter(const Image& image, const MeanShiftConfig& config);

/// Joint Gaussian kernel density (unnormalized) at `point`, summed over every
/// image pixel without truncation.
double kernel_density(const Image& image, const MeanShiftPoint& point, double h_s, double h_r);

}  // namespace edgeaware::meanshift
