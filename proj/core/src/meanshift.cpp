#include "edgeaware/meanshift.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "edgeaware/errors.hpp"
#include "edgeaware/parallel.hpp"

namespace edgeaware::meanshift {

namespace {

constexpr double kMinTotalWeight = 1e-12;

int search_half_width(double h_s) { return static_cast<int>(std::ceil(3.0 * h_s)); }

}  // namespace

void MeanShiftConfig::validate() const {
  if (!(h_s > 0.0)) throw ParamError("h_s must be > 0");
  if (!(h_r > 0.0)) throw ParamError("h_r must be > 0");
  if (!(tau > 0.0)) throw ParamError("tau must be > 0");
  if (!(convergence_eps > 0.0)) throw ParamError("convergence_eps must be > 0");
  if (max_iterations < 1) throw ParamError("max_iterations must be >= 1");
}

Pixel MeanShiftPoint::nearest_pixel(const Image& image) const {
  const int px = static_cast<int>(std::lround(x));
  const int py = static_cast<int>(std::lround(y));
  return {std::clamp(px, 0, image.width() - 1), std::clamp(py, 0, image.height() - 1)};
}

double joint_distance(const MeanShiftPoint& a, const MeanShiftPoint& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy + squared_color_distance(a.range, b.range));
}

double normalized_joint_distance(const MeanShiftPoint& a, const MeanShiftPoint& b, double h_s,
                                 double h_r) {
  const double dx = (a.x - b.x) / h_s;
  const double dy = (a.y - b.y) / h_s;
  return std::sqrt(dx * dx + dy * dy + squared_color_distance(a.range, b.range) / (h_r * h_r));
}

ModeCache::ModeCache(int width, int height)
    : width_(width),
      modes_(static_cast<std::size_t>(width) * height),
      set_(static_cast<std::size_t>(width) * height, 0) {}

std::optional<Rgb> ModeCache::lookup(Pixel p) const {
  const std::size_t i = static_cast<std::size_t>(p.y) * width_ + p.x;
  if (!set_[i]) return std::nullopt;
  return modes_[i];
}

void ModeCache::store(Pixel p, const Rgb& mode) {
  const std::size_t i = static_cast<std::size_t>(p.y) * width_ + p.x;
  if (set_[i]) return;
  set_[i] = 1;
  modes_[i] = mode;
  ++filled_;
}

MeanShiftPoint mean_shift_step(const Image& image, const MeanShiftPoint& state, double h_s,
                               double h_r) {
  const double reach = 3.0 * h_s;
  const int x0 = std::max(0, static_cast<int>(std::ceil(state.x - reach)));
  const int x1 = std::min(image.width() - 1, static_cast<int>(std::floor(state.x + reach)));
  const int y0 = std::max(0, static_cast<int>(std::ceil(state.y - reach)));
  const int y1 = std::min(image.height() - 1, static_cast<int>(std::floor(state.y + reach)));

  // The spatial Gaussian factors into per-column and per-row terms.
  const double spatial_scale = 1.0 / (2.0 * h_s * h_s);
  const double range_scale = 1.0 / (2.0 * h_r * h_r);
  thread_local std::vector<double> column_weight;
  column_weight.resize(static_cast<std::size_t>(std::max(0, x1 - x0 + 1)));
  for (int x = x0; x <= x1; ++x) {
    const double dx = x - state.x;
    column_weight[static_cast<std::size_t>(x - x0)] = std::exp(-dx * dx * spatial_scale);
  }

  double total = 0.0;
  double sum_x = 0.0;
  double sum_y = 0.0;
  Rgb sum_color;
  for (int y = y0; y <= y1; ++y) {
    const double dy = y - state.y;
    const double row_weight = std::exp(-dy * dy * spatial_scale);
    const auto row = image.row(y);
    double row_total = 0.0;
    double row_x = 0.0;
    Rgb row_color;
    for (int x = x0; x <= x1; ++x) {
      const Rgb& color = row[static_cast<std::size_t>(x)];
      const double weight = column_weight[static_cast<std::size_t>(x - x0)] *
                            std::exp(-squared_color_distance(color, state.range) * range_scale);
      row_total += weight;
      row_x += weight * x;
      row_color += (color - state.range) * weight;
    }
    total += row_weight * row_total;
    sum_x += row_weight * row_x;
    sum_y += row_weight * row_total * y;
    sum_color += row_color * row_weight;
  }

  if (!(total >= kMinTotalWeight)) {
    throw DegenerateWeight("mean shift window carries total weight below 1e-12");
  }
  // Color offsets from the current state keep exact fixed points exact.
  return {sum_x / total, sum_y / total, state.range + sum_color * (1.0 / total)};
}

SnapResult snap_to_feature(const Image& image, const MeanShiftPoint& mean, double h_r, double tau,
                           int search_half_width) {
  const Pixel center = mean.nearest_pixel(image);
  const int x0 = std::max(0, center.x - search_half_width);
  const int x1 = std::min(image.width() - 1, center.x + search_half_width);
  const int y0 = std::max(0, center.y - search_half_width);
  const int y1 = std::min(image.height() - 1, center.y + search_half_width);
  const double threshold = tau * h_r * h_r;

  SnapResult best{center, true};
  double best_spatial = std::numeric_limits<double>::infinity();
  double best_color = std::numeric_limits<double>::infinity();
  for (int y = y0; y <= y1; ++y) {
    const double dy = y - mean.y;
    for (int x = x0; x <= x1; ++x) {
      const double color = squared_color_distance(image.at(x, y), mean.range);
      const double dx = x - mean.x;
      const double spatial = dx * dx + dy * dy;
      if (color < threshold) {
        if (best.fallback || spatial < best_spatial) {
          best = {{x, y}, false};
          best_spatial = spatial;
        }
      } else if (best.fallback && color < best_color) {
        best.pixel = {x, y};
        best_color = color;
      }
    }
  }
  return best;
}

ModeResult find_mode(const Image& image, Pixel start, const MeanShiftConfig& config,
                     ModeCache* cache) {
  if (!image.contains(start.x, start.y)) throw ParamError("start pixel lies outside the image");
  if (config.use_cache && cache == nullptr) throw ParamError("use_cache requires a ModeCache");

  ModeResult result;
  MeanShiftPoint state{static_cast<double>(start.x), static_cast<double>(start.y),
                       image.at(start)};
  const int snap_reach = search_half_width(config.h_s);
  MeanShiftPoint previous = state;
  bool have_previous = false;
  thread_local std::vector<Pixel> path;
  path.clear();

  while (true) {
    const Pixel here = state.nearest_pixel(image);
    if (config.use_cache) {
      if (auto cached = cache->lookup(here)) {
        result.mode = *cached;
        result.cache_hit = true;
        result.converged = true;
        break;
      }
      if (path.empty() || path.back() != here) path.push_back(here);
    }
    if (result.iterations >= config.max_iterations) {
      result.mode = state.range;
      break;
    }

    MeanShiftPoint next = mean_shift_step(image, state, config.h_s, config.h_r);
    if (config.edge_aware) {
      const SnapResult snap = snap_to_feature(image, next, config.h_r, config.tau, snap_reach);
      next.x = snap.pixel.x;
      next.y = snap.pixel.y;
      if (snap.fallback) ++result.snap_fallbacks;
    }
    double shift = normalized_joint_distance(next, state, config.h_s, config.h_r);
    if (config.edge_aware && have_previous) {
      // Snapping discretizes the spatial component, so a trajectory can settle
      // into a two-state cycle instead of a fixed point.
      shift = std::min(shift, normalized_joint_distance(next, previous, config.h_s, config.h_r));
    }
    previous = state;
    have_previous = true;
    state = next;
    ++result.iterations;
    if (shift * shift < config.convergence_eps) {
      result.mode = state.range;
      result.converged = true;
      if (config.use_cache) {
        const Pixel last = state.nearest_pixel(image);
        if (path.back() != last) path.push_back(last);
      }
      break;
    }
  }

  if (config.use_cache) {
    for (const Pixel& p : path) cache->store(p, result.mode);
  }
  return result;
}

FilterReport mean_shift_filter(const Image& image, const MeanShiftConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const int w = image.width();
  const int h = image.height();
  FilterReport report{Image(w, h)};
  std::vector<ModeResult> results(image.size());

  if (config.use_cache) {
    // The cache makes results depend on visit order; row-major, one thread.
    ModeCache cache(w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        results[static_cast<std::size_t>(y) * w + x] = find_mode(image, {x, y}, config, &cache);
      }
    }
  } else {
    parallel_for(h, [&](int y0, int y1) {
      for (int y = y0; y < y1; ++y) {
        for (int x = 0; x < w; ++x) {
          results[static_cast<std::size_t>(y) * w + x] = find_mode(image, {x, y}, config, nullptr);
        }
      }
    });
  }

  long total_iterations = 0;
  int most = 0;
  std::size_t unconverged = 0;
  std::size_t fallbacks = 0;
  std::size_t hits = 0;
  auto out = report.image.pixels();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const ModeResult& r = results[i];
    out[i] = r.mode;
    total_iterations += r.iterations;
    most = std::max(most, r.iterations);
    if (!r.converged) ++unconverged;
    if (r.cache_hit) ++hits;
    fallbacks += r.snap_fallbacks;
  }
  report.iterations = most;
  report.mean_iterations = static_cast<double>(total_iterations) / static_cast<double>(results.size());
  report.max_iterations_used = most;
  report.unconverged_pixels = unconverged;
  report.snap_fallbacks = fallbacks;
  if (config.use_cache) report.cache_hits = hits;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

double kernel_density(const Image& image, const MeanShiftPoint& point, double h_s, double h_r) {
  const double spatial_scale = 1.0 / (2.0 * h_s * h_s);
  const double range_scale = 1.0 / (2.0 * h_r * h_r);
  double density = 0.0;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const double dx = x - point.x;
      const double dy = y - point.y;
      density += std::exp(-(dx * dx + dy * dy) * spatial_scale -
                          squared_color_distance(image.at(x, y), point.range) * range_scale);
    }
  }
  return density;
}

}  // namespace edgeaware::meanshift
