#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edgeaware/image.hpp"

namespace edgeaware {

/// Filter output plus run statistics. Algorithm-specific fields are left
/// empty by filters that do not produce them.
struct FilterReport {
  explicit FilterReport(Image output) : image(std::move(output)) {}

  Image image;
  double wall_seconds = 0.0;
  int iterations = 0;

  /// Diffusion: mean |f_new - f_old| over all channels, one entry per iteration.
  std::vector<double> mean_abs_update;
  /// Edge-aware bilateral: settled Dijkstra nodes per output pixel, per pass.
  std::vector<double> mean_expanded;
  /// Mean shift: mean_shift_step evaluations per pixel.
  std::optional<double> mean_iterations;
  std::optional<int> max_iterations_used;
  std::optional<std::size_t> unconverged_pixels;
  std::optional<std::size_t> snap_fallbacks;
  std::optional<std::size_t> cache_hits;

  /// Flattened statistics for manifests, excluding wall time.
  std::vector<std::pair<std::string, std::string>> statistics() const;
};

}  // namespace edgeaware
