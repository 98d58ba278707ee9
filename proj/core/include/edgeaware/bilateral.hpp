#pragma once

#include <limits>
#include <vector>

#include "edgeaware/image.hpp"
#include "edgeaware/report.hpp"

namespace edgeaware::bilateral {

/// How edge weights combine along a path.
enum class PathMetric {
  sum_path,  ///< geodesic length: sum of color distances
  max_path,  ///< minimax: largest single color distance on the path
};

/// Window half-width used by the edge-aware filter when none is given.
inline constexpr int kDefaultGeodesicCutoff = 20;

struct BilateralConfig {
  /// Spatial standard deviation (standard filter only).
  double sigma_s = 10.0;
  /// Range standard deviation; for the edge-aware filter this is the single
  /// parameter applied to path length.
  double sigma_r = 55.0;
  /// Window half-width; 0 selects ceil(3 sigma_s) for the standard filter
  /// and kDefaultGeodesicCutoff for the edge-aware filter.
  int spatial_cutoff = 0;
  int iterations = 1;
  PathMetric metric = PathMetric::sum_path;

  int standard_cutoff() const;
  int geodesic_cutoff() const;
  void validate_standard() const;
  void validate_edge_aware() const;
};

/// Path costs from one origin over a square window.
struct DistanceMap {
  Pixel origin;
  /// Window clipped to the image.
  Box window;
  /// Row-major over `window`; +infinity where the search did not settle.
  std::vector<double> cost;
  std::size_t expanded_count = 0;

  double at(int x, int y) const {
    return cost[static_cast<std::size_t>(y - window.y) * window.w + (x - window.x)];
  }
  bool reached(int x, int y) const {
    return window.contains(x, y) && at(x, y) != std::numeric_limits<double>::infinity();
  }
};

/// Termination threshold for a given range standard deviation.
constexpr double termination_threshold(double sigma_r) { return 3.0 * sigma_r; }

/// Dijkstra over the 4-connected grid restricted to the window of half-width
/// `spatial_cutoff` around `origin`. Edge weights are color distances. The
/// search stops before settling any node whose cost exceeds `tau`.
DistanceMap geodesic_distances(const Image& image, Pixel origin, double tau, int spatial_cutoff,
                               PathMetric metric);

/// Same as above with tau = 3 sigma_r.
DistanceMap geodesic_distances_sigma(const Image& image, Pixel origin, double sigma_r,
                                     int spatial_cutoff, PathMetric metric);

/// Classical bilateral filter: spatial Gaussian times range Gaussian over a
/// square window clipped to the image. sigma_r may be +infinity.
FilterReport bilateral_standard(const Image& image, const BilateralConfig& config);

/// Range Gaussian applied to path cost from each output pixel; iterated
/// `config.iterations` times.
FilterReport bilateral_edge_aware(const Image& image, const BilateralConfig& config);

}  // namespace edgeaware::bilateral
