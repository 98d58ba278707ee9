#pragma once

#include <variant>
#include <vector>

#include "edgeaware/image.hpp"
#include "edgeaware/report.hpp"

namespace edgeaware::diffusion {

/// Separable Gaussian blur of the image before derivative estimation.
struct GaussianPreconditioner {
  double sigma_s = 0.5;
};

/// Small fixed-window bilateral filter used in place of the Gaussian blur.
struct BilateralPreconditioner {
  double sigma_s = 0.5;
  double sigma_r = 55.0;
  int window = 5;
};

using Preconditioner = std::variant<GaussianPreconditioner, BilateralPreconditioner>;

struct DiffusionConfig {
  /// Conductivity decay (inverse squared channel units).
  double lambda = 0.002;
  int iterations = 5;
  Preconditioner preconditioner = BilateralPreconditioner{};
  /// Explicit Euler step; 0.25 is the 2-D stability bound for conductivity <= 1.
  double time_step = 0.25;

  /// Throws ParamError on out-of-range values.
  void validate() const;
};

/// Per-pixel, per-axis conductance in (0, 1]. `cx(x, y)` gates the link
/// between (x, y) and (x+1, y) and `cy(x, y)` the link to (x, y+1) when the
/// field is computed with forward differences.
struct ConductivityField {
  int width = 0;
  int height = 0;
  std::vector<double> cx;
  std::vector<double> cy;

  double x_at(int x, int y) const { return cx[static_cast<std::size_t>(y) * width + x]; }
  double y_at(int x, int y) const { return cy[static_cast<std::size_t>(y) * width + x]; }
};

/// Which one-sided difference approximates a first derivative.
enum class Parity { causal, noncausal };

/// exp(-lambda * partial_norm^2); exactly 1 for a zero partial, any lambda.
double conductivity_value(double partial_norm, double lambda);

/// Index reflection without repeating the edge sample (-1 -> 1, n -> n-2).
int mirror_index(int i, int n);

/// Normalized 1-D Gaussian taps of radius ceil(3 sigma).
std::vector<double> gaussian_kernel(double sigma);
std::vector<double> gaussian_kernel(double sigma, int radius);

Image precondition(const Image& image, const Preconditioner& preconditioner);
Image gaussian_blur(const Image& image, double sigma_s);
Image gaussian_blur(const Image& image, double sigma_s, int radius);
/// Bilateral filter over a fixed odd window with mirrored borders.
/// sigma_r may be +infinity, which reduces to the windowed Gaussian.
Image windowed_bilateral(const Image& image, double sigma_s, double sigma_r, int window);

/// Conductivity from the joint three-channel norm of each partial derivative.
/// Causal parity uses forward differences (backward in the last column/row);
/// noncausal uses backward differences (forward in the first column/row).
ConductivityField compute_conductivity(const Image& preconditioned, double lambda,
                                       Parity parity = Parity::causal);

/// One explicit Euler update f += dt * div(C grad f) with zero flux through
/// the image border. Throws DimensionMismatch if `field` does not match.
Image diffuse_step(const Image& image, const ConductivityField& field, double time_step,
                   Parity parity);

/// Runs `iterations` rounds of precondition -> conductivity -> step,
/// starting causal and flipping parity every round.
FilterReport diffuse(const Image& image, const DiffusionConfig& config);

}  // namespace edgeaware::diffusion
