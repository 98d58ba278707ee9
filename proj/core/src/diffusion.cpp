#include "edgeaware/diffusion.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "edgeaware/errors.hpp"
#include "edgeaware/parallel.hpp"

namespace edgeaware::diffusion {

namespace {

double range_weight(double squared_distance, double sigma_r) {
  if (std::isinf(sigma_r)) return 1.0;
  return std::exp(-squared_distance / (2.0 * sigma_r * sigma_r));
}

double mean_abs_difference(const Image& a, const Image& b) {
  double total = 0.0;
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    for (int c = 0; c < 3; ++c) total += std::abs(pa[i][c] - pb[i][c]);
  }
  return total / (3.0 * static_cast<double>(pa.size()));
}

}  // namespace

void DiffusionConfig::validate() const {
  if (!(lambda >= 0.0)) throw ParamError("lambda must be >= 0");
  if (iterations < 0) throw ParamError("iterations must be >= 0");
  if (!(time_step > 0.0 && time_step <= 0.25)) throw ParamError("time_step must be in (0, 0.25]");
  if (const auto* g = std::get_if<GaussianPreconditioner>(&preconditioner)) {
    if (!(g->sigma_s > 0.0)) throw ParamError("sigma_s must be > 0");
  } else {
    const auto& b = std::get<BilateralPreconditioner>(preconditioner);
    if (!(b.sigma_s > 0.0)) throw ParamError("sigma_s must be > 0");
    if (!(b.sigma_r > 0.0)) throw ParamError("sigma_r must be > 0");
    if (b.window < 3 || b.window % 2 == 0) throw ParamError("bilateral window must be odd and >= 3");
  }
}

double conductivity_value(double partial_norm, double lambda) {
  // Guards lambda = inf against inf * 0.
  if (partial_norm == 0.0 || lambda == 0.0) return 1.0;
  return std::exp(-lambda * partial_norm * partial_norm);
}

int mirror_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

std::vector<double> gaussian_kernel(double sigma, int radius) {
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  double total = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double w = std::exp(-(k * k) / (2.0 * sigma * sigma));
    taps[static_cast<std::size_t>(k + radius)] = w;
    total += w;
  }
  for (double& w : taps) w /= total;
  return taps;
}

std::vector<double> gaussian_kernel(double sigma) {
  return gaussian_kernel(sigma, static_cast<int>(std::ceil(3.0 * sigma)));
}

Image gaussian_blur(const Image& image, double sigma_s, int radius) {
  if (!(sigma_s > 0.0)) throw ParamError("gaussian sigma_s must be > 0");
  const std::vector<double> taps = gaussian_kernel(sigma_s, radius);
  const int w = image.width();
  const int h = image.height();

  Image horizontal(w, h);
  parallel_for(h, [&](int y0, int y1) {
    for (int y = y0; y < y1; ++y) {
      for (int x = 0; x < w; ++x) {
        Rgb acc;
        for (int k = -radius; k <= radius; ++k) {
          acc += image.at(mirror_index(x + k, w), y) * taps[static_cast<std::size_t>(k + radius)];
        }
        horizontal.at(x, y) = acc;
      }
    }
  });

  Image out(w, h);
  parallel_for(h, [&](int y0, int y1) {
    for (int y = y0; y < y1; ++y) {
      for (int x = 0; x < w; ++x) {
        Rgb acc;
        for (int k = -radius; k <= radius; ++k) {
          acc += horizontal.at(x, mirror_index(y + k, h)) *
                 taps[static_cast<std::size_t>(k + radius)];
        }
        out.at(x, y) = acc;
      }
    }
  });
  return out;
}

Image gaussian_blur(const Image& image, double sigma_s) {
  return gaussian_blur(image, sigma_s, static_cast<int>(std::ceil(3.0 * sigma_s)));
}

Image windowed_bilateral(const Image& image, double sigma_s, double sigma_r, int window) {
  if (window < 3 || window % 2 == 0) throw ParamError("bilateral window must be odd and >= 3");
  if (!(sigma_s > 0.0) || !(sigma_r > 0.0)) throw ParamError("bilateral sigmas must be > 0");
  const int radius = window / 2;
  const int w = image.width();
  const int h = image.height();

  std::vector<double> spatial(static_cast<std::size_t>(window * window));
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      spatial[static_cast<std::size_t>((dy + radius) * window + dx + radius)] =
          std::exp(-(dx * dx + dy * dy) / (2.0 * sigma_s * sigma_s));
    }
  }

  Image out(w, h);
  parallel_for(h, [&](int y0, int y1) {
    for (int y = y0; y < y1; ++y) {
      for (int x = 0; x < w; ++x) {
        const Rgb& center = image.at(x, y);
        Rgb acc;
        double total = 0.0;
        for (int dy = -radius; dy <= radius; ++dy) {
          const int sy = mirror_index(y + dy, h);
          for (int dx = -radius; dx <= radius; ++dx) {
            const Rgb& sample = image.at(mirror_index(x + dx, w), sy);
            const double weight =
                spatial[static_cast<std::size_t>((dy + radius) * window + dx + radius)] *
                range_weight(squared_color_distance(sample, center), sigma_r);
            acc += sample * weight;
            total += weight;
          }
        }
        out.at(x, y) = acc * (1.0 / total);
      }
    }
  });
  return out;
}

Image precondition(const Image& image, const Preconditioner& preconditioner) {
  if (const auto* g = std::get_if<GaussianPreconditioner>(&preconditioner)) {
    return gaussian_blur(image, g->sigma_s);
  }
  const auto& b = std::get<BilateralPreconditioner>(preconditioner);
  return windowed_bilateral(image, b.sigma_s, b.sigma_r, b.window);
}

ConductivityField compute_conductivity(const Image& preconditioned, double lambda, Parity parity) {
  if (!(lambda >= 0.0)) throw ParamError("lambda must be >= 0");
  const int w = preconditioned.width();
  const int h = preconditioned.height();
  ConductivityField field{w, h, std::vector<double>(preconditioned.size(), 1.0),
                          std::vector<double>(preconditioned.size(), 1.0)};

  // Causal: forward difference, backward in the last column/row.
  // Noncausal: backward difference, forward in the first column/row.
  auto partner = [parity](int i, int n) {
    if (parity == Parity::causal) return i + 1 < n ? i + 1 : i - 1;
    return i > 0 ? i - 1 : i + 1;
  };

  parallel_for(h, [&](int y0, int y1) {
    for (int y = y0; y < y1; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        const Rgb& here = preconditioned.at(x, y);
        if (w > 1) {
          const double dx = color_distance(preconditioned.at(partner(x, w), y), here);
          field.cx[i] = conductivity_value(dx, lambda);
        }
        if (h > 1) {
          const double dy = color_distance(preconditioned.at(x, partner(y, h)), here);
          field.cy[i] = conductivity_value(dy, lambda);
        }
      }
    }
  });
  return field;
}

Image diffuse_step(const Image& image, const ConductivityField& field, double time_step,
                   Parity parity) {
  const int w = image.width();
  const int h = image.height();
  if (field.width != w || field.height != h || field.cx.size() != image.size() ||
      field.cy.size() != image.size()) {
    throw DimensionMismatch("conductivity field " + std::to_string(field.width) + "x" +
                            std::to_string(field.height) + " does not match image " +
                            std::to_string(w) + "x" + std::to_string(h));
  }

  // Link (x, x+1) takes its conductance from the pixel whose one-sided
  // difference spans it: x under causal parity, x+1 under noncausal.
  // Border links are absent, which makes the boundary zero-flux.
  const int shift = parity == Parity::causal ? 0 : 1;
  Image out(w, h);
  parallel_for(h, [&](int y0, int y1) {
    for (int y = y0; y < y1; ++y) {
      for (int x = 0; x < w; ++x) {
        const Rgb& f = image.at(x, y);
        Rgb flow;
        if (x + 1 < w) flow += (image.at(x + 1, y) - f) * field.x_at(x + shift, y);
        if (x > 0) flow += (image.at(x - 1, y) - f) * field.x_at(x - 1 + shift, y);
        if (y + 1 < h) flow += (image.at(x, y + 1) - f) * field.y_at(x, y + shift);
        if (y > 0) flow += (image.at(x, y - 1) - f) * field.y_at(x, y - 1 + shift);
        out.at(x, y) = f + flow * time_step;
      }
    }
  });
  return out;
}

FilterReport diffuse(const Image& image, const DiffusionConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  FilterReport report{image};
  report.iterations = config.iterations;
  Parity parity = Parity::causal;
  for (int it = 0; it < config.iterations; ++it) {
    const Image smoothed = precondition(report.image, config.preconditioner);
    const ConductivityField field = compute_conductivity(smoothed, config.lambda, parity);
    Image next = diffuse_step(report.image, field, config.time_step, parity);
    report.mean_abs_update.push_back(mean_abs_difference(next, report.image));
    report.image = std::move(next);
    parity = parity == Parity::causal ? Parity::noncausal : Parity::causal;
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace edgeaware::diffusion
