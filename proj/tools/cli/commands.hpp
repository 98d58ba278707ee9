#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/manifest.hpp"
#include "edgeaware/bilateral.hpp"
#include "edgeaware/challenge.hpp"
#include "edgeaware/diffusion.hpp"
#include "edgeaware/meanshift.hpp"
#include "edgeaware/report.hpp"

namespace edgeaware::cli {

enum class Algorithm { diffuse, bilateral, meanshift };

std::string to_string(Algorithm algorithm);

/// Flag values for one filter run. Unset optionals take the per-algorithm
/// default (diffuse: sigma-s 0.5, iters 5; bilateral: sigma-s 10, iters 1).
struct FilterParams {
  Algorithm algorithm = Algorithm::diffuse;
  bool edge_aware = false;

  double lambda = 0.002;
  std::optional<int> iterations;
  std::optional<double> sigma_s;
  double sigma_r = 55.0;
  int window = 5;
  double time_step = 0.25;

  int cutoff = 0;
  bilateral::PathMetric metric = bilateral::PathMetric::sum_path;

  double h_s = 5.0;
  double h_r = 45.0;
  double tau = 0.5;
  double eps = 0.01;
  int max_iterations = 100;
  bool use_cache = true;
};

diffusion::DiffusionConfig diffusion_config(const FilterParams& params);
bilateral::BilateralConfig bilateral_config(const FilterParams& params);
meanshift::MeanShiftConfig meanshift_config(const FilterParams& params);

/// Runs the selected filter on `input`.
FilterReport run_filter(const Image& input, const FilterParams& params);

/// Writes the resolved parameters of `params` as `param.*` entries.
void record_params(const FilterParams& params, Manifest& manifest);

/// Sets the parameter a sweep axis names (`lambda`, `iters`, `sigma-s`,
/// `sigma-r`, `hs`, `hr`). Throws ParamError for unknown names.
void set_param(FilterParams& params, const std::string& name, double value);

/// Sweep axes for an algorithm/mode: {row parameter, column parameter}.
std::pair<std::string, std::string> sweep_axes(Algorithm algorithm, bool edge_aware);

struct GenerateOptions {
  ChallengeSpec spec;
  std::filesystem::path out = "challenge.png";
};

struct FilterOptions {
  FilterParams params;
  std::filesystem::path in;
  std::filesystem::path out;
};

struct SweepOptions {
  FilterParams base;
  std::vector<double> row_values;
  std::vector<double> col_values;
  std::filesystem::path in;
  std::filesystem::path out_dir;
  std::optional<std::filesystem::path> regions;
};

struct MetricsOptions {
  std::filesystem::path test;
  std::optional<std::filesystem::path> reference;
  std::optional<std::filesystem::path> regions;
  /// Output prefix; `<prefix>.txt` and `<prefix>.csv` are written.
  std::filesystem::path out;
  double tolerance = 25.0;
};

void cmd_generate(const GenerateOptions& options, const std::string& command_line);
FilterReport cmd_filter(const FilterOptions& options, const std::string& command_line);
void cmd_sweep(const SweepOptions& options, const std::string& command_line);
std::string cmd_metrics(const MetricsOptions& options);

/// Comma-separated list of numbers; throws ParamError naming `flag` when the
/// list is empty or malformed.
std::vector<double> parse_grid(const std::string& flag, const std::string& text);

/// Full command-line entry point. `args[0]` is the program name. Returns the
/// process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edgeaware::cli
