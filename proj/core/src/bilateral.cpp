#include "edgeaware/bilateral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>

#include "edgeaware/errors.hpp"
#include "edgeaware/parallel.hpp"

namespace edgeaware::bilateral {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Box clip_window(const Image& image, Pixel origin, int cutoff) {
  const int x0 = std::max(0, origin.x - cutoff);
  const int y0 = std::max(0, origin.y - cutoff);
  const int x1 = std::min(image.width() - 1, origin.x + cutoff);
  const int y1 = std::min(image.height() - 1, origin.y + cutoff);
  return {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

double gaussian(double distance, double sigma) {
  if (std::isinf(sigma)) return 1.0;
  return std::exp(-(distance * distance) / (2.0 * sigma * sigma));
}

/// Color distances of the right and down grid edges inside `region`.
struct EdgeWeights {
  Box region;
  std::vector<double> right;
  std::vector<double> down;

  EdgeWeights(const Image& image, const Box& area)
      : region(area),
        right(static_cast<std::size_t>(area.area()), kInf),
        down(static_cast<std::size_t>(area.area()), kInf) {
    for (int y = area.y; y < area.bottom(); ++y) {
      for (int x = area.x; x < area.right(); ++x) {
        const std::size_t i = index(x, y);
        if (x + 1 < area.right()) right[i] = color_distance(image.at(x, y), image.at(x + 1, y));
        if (y + 1 < area.bottom()) down[i] = color_distance(image.at(x, y), image.at(x, y + 1));
      }
    }
  }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y - region.y) * region.w + (x - region.x);
  }
};

/// Reusable Dijkstra state for one worker.
class GeodesicSearch {
 public:
  struct Settled {
    int x;
    int y;
    double cost;
  };

  void run(const EdgeWeights& edges, const Box& window, Pixel origin, double tau,
           PathMetric metric) {
    window_ = window;
    const std::size_t area = static_cast<std::size_t>(window.area());
    cost_.assign(area, kInf);
    done_.assign(area, 0);
    heap_.clear();
    settled_.clear();

    const auto local = [&](int x, int y) {
      return static_cast<std::size_t>(y - window.y) * window.w + (x - window.x);
    };
    const auto relax = [&](int x, int y, double base, double edge) {
      const std::size_t j = local(x, y);
      if (done_[j]) return;
      const double candidate = metric == PathMetric::sum_path ? base + edge : std::max(base, edge);
      if (candidate < cost_[j] && candidate <= tau) {
        cost_[j] = candidate;
        heap_.push_back({candidate, static_cast<int>(j)});
        std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
      }
    };

    cost_[local(origin.x, origin.y)] = 0.0;
    heap_.push_back({0.0, static_cast<int>(local(origin.x, origin.y))});
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
      const auto [c, j] = heap_.back();
      heap_.pop_back();
      if (done_[static_cast<std::size_t>(j)]) continue;
      if (c > tau) break;
      done_[static_cast<std::size_t>(j)] = 1;
      const int x = window.x + j % window.w;
      const int y = window.y + j / window.w;
      settled_.push_back({x, y, c});

      const std::size_t g = edges.index(x, y);
      if (x + 1 < window.right()) relax(x + 1, y, c, edges.right[g]);
      if (x > window.x) relax(x - 1, y, c, edges.right[g - 1]);
      if (y + 1 < window.bottom()) relax(x, y + 1, c, edges.down[g]);
      if (y > window.y) relax(x, y - 1, c, edges.down[g - static_cast<std::size_t>(edges.region.w)]);
    }
  }

  const std::vector<Settled>& settled() const { return settled_; }

  DistanceMap to_map(Pixel origin) const {
    DistanceMap map{origin, window_, std::vector<double>(cost_.size(), kInf), settled_.size()};
    for (const Settled& s : settled_) {
      map.cost[static_cast<std::size_t>(s.y - window_.y) * window_.w + (s.x - window_.x)] = s.cost;
    }
    return map;
  }

 private:
  struct Entry {
    double cost;
    int node;
    friend bool operator>(const Entry& a, const Entry& b) {
      return a.cost > b.cost || (a.cost == b.cost && a.node > b.node);
    }
  };

  Box window_;
  std::vector<double> cost_;
  std::vector<unsigned char> done_;
  std::vector<Entry> heap_;
  std::vector<Settled> settled_;
};

void check_origin(const Image& image, Pixel origin) {
  if (!image.contains(origin.x, origin.y)) throw ParamError("origin lies outside the image");
}

}  // namespace

int BilateralConfig::standard_cutoff() const {
  return spatial_cutoff > 0 ? spatial_cutoff : static_cast<int>(std::ceil(3.0 * sigma_s));
}

int BilateralConfig::geodesic_cutoff() const {
  return spatial_cutoff > 0 ? spatial_cutoff : kDefaultGeodesicCutoff;
}

void BilateralConfig::validate_standard() const {
  if (!(sigma_s > 0.0)) throw ParamError("sigma_s must be > 0");
  if (!(sigma_r > 0.0)) throw ParamError("sigma_r must be > 0");
  if (spatial_cutoff < 0) throw ParamError("spatial_cutoff must be >= 1 (0 selects the default)");
}

void BilateralConfig::validate_edge_aware() const {
  if (!(sigma_r > 0.0)) throw ParamError("sigma_r must be > 0");
  if (spatial_cutoff < 0) throw ParamError("spatial_cutoff must be >= 1 (0 selects the default)");
  if (iterations < 1) throw ParamError("iterations must be >= 1");
}

DistanceMap geodesic_distances(const Image& image, Pixel origin, double tau, int spatial_cutoff,
                               PathMetric metric) {
  check_origin(image, origin);
  if (spatial_cutoff < 0) throw ParamError("spatial_cutoff must be >= 0");
  if (!(tau >= 0.0)) throw ParamError("tau must be >= 0");
  const Box window = clip_window(image, origin, spatial_cutoff);
  const EdgeWeights edges(image, window);
  GeodesicSearch search;
  search.run(edges, window, origin, tau, metric);
  return search.to_map(origin);
}

DistanceMap geodesic_distances_sigma(const Image& image, Pixel origin, double sigma_r,
                                     int spatial_cutoff, PathMetric metric) {
  return geodesic_distances(image, origin, termination_threshold(sigma_r), spatial_cutoff, metric);
}

FilterReport bilateral_standard(const Image& image, const BilateralConfig& config) {
  config.validate_standard();
  const auto start = std::chrono::steady_clock::now();
  const int radius = config.standard_cutoff();
  const int side = 2 * radius + 1;
  std::vector<double> spatial(static_cast<std::size_t>(side) * side);
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      spatial[static_cast<std::size_t>((dy + radius) * side + dx + radius)] =
          std::exp(-(dx * dx + dy * dy) / (2.0 * config.sigma_s * config.sigma_s));
    }
  }

  const int w = image.width();
  const int h = image.height();
  const bool flat_range = std::isinf(config.sigma_r);
  const double range_scale = flat_range ? 0.0 : 1.0 / (2.0 * config.sigma_r * config.sigma_r);
  FilterReport report{Image(w, h)};
  report.iterations = 1;
  parallel_for(h, [&](int y0, int y1) {
    for (int y = y0; y < y1; ++y) {
      for (int x = 0; x < w; ++x) {
        const Rgb& center = image.at(x, y);
        Rgb acc;
        double total = 0.0;
        for (int qy = std::max(0, y - radius); qy <= std::min(h - 1, y + radius); ++qy) {
          const std::size_t row = static_cast<std::size_t>(qy - y + radius) * side;
          for (int qx = std::max(0, x - radius); qx <= std::min(w - 1, x + radius); ++qx) {
            const Rgb& sample = image.at(qx, qy);
            double weight = spatial[row + static_cast<std::size_t>(qx - x + radius)];
            if (!flat_range) weight *= std::exp(-squared_color_distance(sample, center) * range_scale);
            acc += sample * weight;
            total += weight;
          }
        }
        report.image.at(x, y) = acc * (1.0 / total);
      }
    }
  });
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

FilterReport bilateral_edge_aware(const Image& image, const BilateralConfig& config) {
  config.validate_edge_aware();
  const auto start = std::chrono::steady_clock::now();
  const int cutoff = config.geodesic_cutoff();
  const double tau = termination_threshold(config.sigma_r);
  const int w = image.width();
  const int h = image.height();

  FilterReport report{image};
  report.iterations = config.iterations;
  std::vector<std::size_t> expanded_per_row(static_cast<std::size_t>(h));
  for (int pass = 0; pass < config.iterations; ++pass) {
    const Image& source = report.image;
    const EdgeWeights edges(source, source.bounds());
    Image out(w, h);
    parallel_for(h, [&](int y0, int y1) {
      GeodesicSearch search;
      for (int y = y0; y < y1; ++y) {
        std::size_t expanded = 0;
        for (int x = 0; x < w; ++x) {
          const Pixel origin{x, y};
          search.run(edges, clip_window(source, origin, cutoff), origin, tau, config.metric);
          Rgb acc;
          double total = 0.0;
          for (const auto& s : search.settled()) {
            const double weight = gaussian(s.cost, config.sigma_r);
            acc += source.at(s.x, s.y) * weight;
            total += weight;
          }
          out.at(x, y) = acc * (1.0 / total);
          expanded += search.settled().size();
        }
        expanded_per_row[static_cast<std::size_t>(y)] = expanded;
      }
    });
    const double expanded_total = static_cast<double>(
        std::accumulate(expanded_per_row.begin(), expanded_per_row.end(), std::size_t{0}));
    report.mean_expanded.push_back(expanded_total / static_cast<double>(image.size()));
    report.image = std::move(out);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace edgeaware::bilateral
