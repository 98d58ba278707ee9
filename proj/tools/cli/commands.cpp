#include "cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/montage.hpp"
#include "edgeaware/errors.hpp"
#include "edgeaware/metrics.hpp"
#include "edgeaware/png_io.hpp"

namespace edgeaware::cli {
namespace {

namespace fs = std::filesystem;

void require(bool ok, const std::string& flag, const std::string& what) {
  if (!ok) throw ParamError(flag + " " + what);
}

void check_params(const FilterParams& p) {
  switch (p.algorithm) {
    case Algorithm::diffuse:
      require(p.lambda >= 0.0, "--lambda", "must be >= 0");
      require(p.iterations.value_or(5) >= 0, "--iters", "must be >= 0");
      require(p.sigma_s.value_or(0.5) > 0.0, "--sigma-s", "must be > 0");
      require(p.time_step > 0.0 && p.time_step <= 0.25, "--time-step", "must be in (0, 0.25]");
      if (p.edge_aware) {
        require(p.sigma_r > 0.0, "--sigma-r", "must be > 0");
        require(p.window >= 3 && p.window % 2 == 1, "--window", "must be odd and >= 3");
      }
      break;
    case Algorithm::bilateral:
      require(p.sigma_r > 0.0, "--sigma-r", "must be > 0");
      require(p.cutoff >= 0, "--cutoff", "must be >= 0");
      if (p.edge_aware) {
        require(p.iterations.value_or(1) >= 1, "--iters", "must be >= 1");
      } else {
        require(p.sigma_s.value_or(10.0) > 0.0, "--sigma-s", "must be > 0");
        require(p.iterations.value_or(1) >= 1, "--iters", "must be >= 1");
      }
      break;
    case Algorithm::meanshift:
      require(p.h_s > 0.0, "--hs", "must be > 0");
      require(p.h_r > 0.0, "--hr", "must be > 0");
      require(p.tau > 0.0, "--tau", "must be > 0");
      require(p.eps > 0.0, "--eps", "must be > 0");
      require(p.max_iterations >= 1, "--max-iters", "must be >= 1");
      break;
  }
}

std::string metric_name(bilateral::PathMetric metric) {
  return metric == bilateral::PathMetric::sum_path ? "sum" : "max";
}

std::string mode_name(bool edge_aware) { return edge_aware ? "edge-aware" : "standard"; }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
}

std::string axis_label(double value) {
  std::string text = metrics::format_number(value);
  for (char& c : text) {
    if (c == '.') c = 'p';
    if (c == '-') c = 'm';
    if (c == '+') c = '_';
  }
  return text;
}

std::string join_args(const std::vector<std::string>& args) {
  std::string line;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) line += ' ';
    line += args[i];
  }
  return line;
}

}  // namespace

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::diffuse: return "diffuse";
    case Algorithm::bilateral: return "bilateral";
    case Algorithm::meanshift: return "meanshift";
  }
  return "unknown";
}

diffusion::DiffusionConfig diffusion_config(const FilterParams& p) {
  diffusion::DiffusionConfig config;
  config.lambda = p.lambda;
  config.iterations = p.iterations.value_or(5);
  config.time_step = p.time_step;
  const double sigma_s = p.sigma_s.value_or(0.5);
  if (p.edge_aware) {
    config.preconditioner = diffusion::BilateralPreconditioner{sigma_s, p.sigma_r, p.window};
  } else {
    config.preconditioner = diffusion::GaussianPreconditioner{sigma_s};
  }
  return config;
}

bilateral::BilateralConfig bilateral_config(const FilterParams& p) {
  bilateral::BilateralConfig config;
  config.sigma_s = p.sigma_s.value_or(10.0);
  config.sigma_r = p.sigma_r;
  config.spatial_cutoff = p.cutoff;
  config.iterations = p.iterations.value_or(1);
  config.metric = p.metric;
  return config;
}

meanshift::MeanShiftConfig meanshift_config(const FilterParams& p) {
  meanshift::MeanShiftConfig config;
  config.h_s = p.h_s;
  config.h_r = p.h_r;
  config.tau = p.tau;
  config.convergence_eps = p.eps;
  config.max_iterations = p.max_iterations;
  config.edge_aware = p.edge_aware;
  config.use_cache = p.use_cache;
  return config;
}

FilterReport run_filter(const Image& input, const FilterParams& params) {
  check_params(params);
  switch (params.algorithm) {
    case Algorithm::diffuse:
      return diffusion::diffuse(input, diffusion_config(params));
    case Algorithm::bilateral:
      return params.edge_aware ? bilateral::bilateral_edge_aware(input, bilateral_config(params))
                               : bilateral::bilateral_standard(input, bilateral_config(params));
    case Algorithm::meanshift:
      return meanshift::mean_shift_filter(input, meanshift_config(params));
  }
  throw ParamError("unknown algorithm");
}

void record_params(const FilterParams& p, Manifest& m) {
  m.set("algorithm", to_string(p.algorithm));
  m.set("mode", mode_name(p.edge_aware));
  switch (p.algorithm) {
    case Algorithm::diffuse: {
      const auto config = diffusion_config(p);
      m.set("param.lambda", config.lambda);
      m.set("param.iters", static_cast<long long>(config.iterations));
      m.set("param.time_step", config.time_step);
      m.set("param.preconditioner", std::string(p.edge_aware ? "bilateral" : "gaussian"));
      m.set("param.sigma_s", p.sigma_s.value_or(0.5));
      if (p.edge_aware) {
        m.set("param.sigma_r", p.sigma_r);
        m.set("param.window", static_cast<long long>(p.window));
      }
      break;
    }
    case Algorithm::bilateral: {
      const auto config = bilateral_config(p);
      if (p.edge_aware) {
        m.set("param.sigma_r", config.sigma_r);
        m.set("param.iters", static_cast<long long>(config.iterations));
        m.set("param.cutoff", static_cast<long long>(config.geodesic_cutoff()));
        m.set("param.tau", bilateral::termination_threshold(config.sigma_r));
        m.set("param.metric", metric_name(config.metric));
      } else {
        m.set("param.sigma_s", config.sigma_s);
        m.set("param.sigma_r", config.sigma_r);
        m.set("param.iters", static_cast<long long>(config.iterations));
        m.set("param.cutoff", static_cast<long long>(config.standard_cutoff()));
      }
      break;
    }
    case Algorithm::meanshift: {
      m.set("param.hs", p.h_s);
      m.set("param.hr", p.h_r);
      if (p.edge_aware) m.set("param.tau", p.tau);
      m.set("param.eps", p.eps);
      m.set("param.max_iters", static_cast<long long>(p.max_iterations));
      m.set("param.cache", std::string(p.use_cache ? "on" : "off"));
      break;
    }
  }
}

void set_param(FilterParams& p, const std::string& name, double value) {
  if (name == "lambda") {
    p.lambda = value;
  } else if (name == "iters") {
    if (value != std::floor(value)) throw ParamError("--iters grid values must be integers");
    p.iterations = static_cast<int>(value);
  } else if (name == "sigma-s") {
    p.sigma_s = value;
  } else if (name == "sigma-r") {
    p.sigma_r = value;
  } else if (name == "hs") {
    p.h_s = value;
  } else if (name == "hr") {
    p.h_r = value;
  } else {
    throw ParamError("unknown sweep parameter: " + name);
  }
}

std::pair<std::string, std::string> sweep_axes(Algorithm algorithm, bool edge_aware) {
  switch (algorithm) {
    case Algorithm::diffuse: return {"lambda", "iters"};
    case Algorithm::bilateral:
      return edge_aware ? std::pair<std::string, std::string>{"sigma-r", "iters"}
                        : std::pair<std::string, std::string>{"sigma-r", "sigma-s"};
    case Algorithm::meanshift: return {"hr", "hs"};
  }
  throw ParamError("unknown algorithm");
}

std::vector<double> parse_grid(const std::string& flag, const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) throw ParamError(flag + ": empty grid entry in '" + text + "'");
    const auto last = item.find_last_not_of(" \t");
    item = item.substr(first, last - first + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !std::isfinite(value)) {
      throw ParamError(flag + ": not a number: '" + item + "'");
    }
    values.push_back(value);
  }
  if (values.empty()) throw ParamError(flag + ": grid is empty");
  return values;
}

void cmd_generate(const GenerateOptions& options, const std::string& command_line) {
  const Challenge challenge = [&] {
    try {
      return generate_challenge(options.spec);
    } catch (const SpecError& e) {
      throw SpecError(std::string("--size: ") + e.what());
    }
  }();
  save_png(challenge.image, options.out);
  const fs::path regions = sidecar_path(options.out, ".regions");
  write_regions(challenge.regions, regions);

  Manifest m;
  m.set("command", command_line);
  m.set("command_name", std::string("generate"));
  m.set("output", options.out.string());
  m.set("regions", regions.string());
  m.set("width", static_cast<long long>(options.spec.width));
  m.set("height", static_cast<long long>(options.spec.height));
  m.set("seed", static_cast<long long>(options.spec.seed));
  m.set("param.sigma_control", options.spec.noise_sigma_control);
  m.set("param.noise_amplitude", options.spec.noise_amplitude_blocks);
  m.write(sidecar_path(options.out, ".manifest"));
}

FilterReport cmd_filter(const FilterOptions& options, const std::string& command_line) {
  check_params(options.params);
  const Image input = load_png(options.in);
  FilterReport report = run_filter(input, options.params);
  save_png(report.image, options.out);

  Manifest m;
  m.set("command", command_line);
  m.set("command_name", std::string("filter"));
  m.set("input", options.in.string());
  m.set("output", options.out.string());
  record_params(options.params, m);
  for (const auto& [key, value] : report.statistics()) m.set("stat." + key, value);
  m.set("wall_time_seconds", report.wall_seconds);
  m.write(sidecar_path(options.out, ".manifest"));
  return report;
}

void cmd_sweep(const SweepOptions& options, const std::string& command_line) {
  const auto [row_name, col_name] = sweep_axes(options.base.algorithm, options.base.edge_aware);
  if (options.row_values.empty()) throw ParamError("--" + row_name + ": grid is empty");
  if (options.col_values.empty()) throw ParamError("--" + col_name + ": grid is empty");

  // Validate every cell up front so a bad value fails before any work.
  for (double rv : options.row_values) {
    for (double cv : options.col_values) {
      FilterParams p = options.base;
      set_param(p, row_name, rv);
      set_param(p, col_name, cv);
      check_params(p);
    }
  }

  const Image input = load_png(options.in);
  std::optional<ChallengeRegions> regions;
  if (options.regions) regions = read_regions(*options.regions);
  ensure_directory(options.out_dir);

  const std::string stem = to_string(options.base.algorithm) + "_" + mode_name(options.base.edge_aware);
  std::vector<Image> cells;
  std::string csv;
  double total_seconds = 0.0;

  for (double rv : options.row_values) {
    for (double cv : options.col_values) {
      FilterParams p = options.base;
      set_param(p, row_name, rv);
      set_param(p, col_name, cv);
      FilterReport report = run_filter(input, p);
      total_seconds += report.wall_seconds;

      const std::string name = stem + "_" + row_name + "_" + axis_label(rv) + "_" + col_name + "_" +
                               axis_label(cv) + ".png";
      const fs::path image_path = options.out_dir / name;
      save_png(report.image, image_path);

      Manifest m;
      m.set("command", command_line);
      m.set("command_name", std::string("sweep"));
      m.set("input", options.in.string());
      m.set("output", image_path.string());
      record_params(p, m);
      for (const auto& [key, value] : report.statistics()) m.set("stat." + key, value);
      m.set("wall_time_seconds", report.wall_seconds);
      m.write(sidecar_path(image_path, ".manifest"));

      const metrics::MetricReport scores =
          metrics::compute_report(report.image, &input, regions ? &*regions : nullptr);
      if (csv.empty()) csv = row_name + "," + col_name + ",file," + scores.csv_header() + "\n";
      csv += metrics::format_number(rv) + "," + metrics::format_number(cv) + "," + name + "," +
             scores.csv_row() + "\n";
      cells.push_back(std::move(report.image));
    }
  }

  const int rows = static_cast<int>(options.row_values.size());
  const int cols = static_cast<int>(options.col_values.size());
  const fs::path montage_path = options.out_dir / (stem + "_montage.png");
  save_png(montage(cells, rows, cols), montage_path);
  write_text(options.out_dir / (stem + "_metrics.csv"), csv);

  Manifest m;
  m.set("command", command_line);
  m.set("command_name", std::string("sweep"));
  m.set("input", options.in.string());
  m.set("output_dir", options.out_dir.string());
  m.set("montage", montage_path.string());
  m.set("algorithm", to_string(options.base.algorithm));
  m.set("mode", mode_name(options.base.edge_aware));
  m.set("rows", row_name);
  m.set("cols", col_name);
  std::string rv_text, cv_text;
  for (double v : options.row_values) rv_text += (rv_text.empty() ? "" : ",") + metrics::format_number(v);
  for (double v : options.col_values) cv_text += (cv_text.empty() ? "" : ",") + metrics::format_number(v);
  m.set("grid." + row_name, rv_text);
  m.set("grid." + col_name, cv_text);
  m.set("cells", static_cast<long long>(cells.size()));
  m.set("wall_time_seconds", total_seconds);
  m.write(options.out_dir / (stem + "_sweep.manifest"));
}

std::string cmd_metrics(const MetricsOptions& options) {
  if (!(options.tolerance >= 0.0)) throw ParamError("--tolerance must be >= 0");
  const Image test = load_png(options.test);
  std::optional<Image> reference;
  if (options.reference) {
    reference = load_png(*options.reference);
    if (!reference->same_shape(test)) {
      throw DimensionMismatch("--reference " + options.reference->string() + " is " +
                              std::to_string(reference->width()) + "x" +
                              std::to_string(reference->height()) + " but --test " +
                              options.test.string() + " is " + std::to_string(test.width()) + "x" +
                              std::to_string(test.height()));
    }
  }
  std::optional<ChallengeRegions> regions;
  if (options.regions) regions = read_regions(*options.regions);

  metrics::MetricOptions opts;
  opts.novel_tolerance = options.tolerance;
  const metrics::MetricReport report = metrics::compute_report(
      test, reference ? &*reference : nullptr, regions ? &*regions : nullptr, opts);

  const std::string text = report.to_text();
  if (!options.out.empty()) {
    fs::path txt = options.out;
    txt += ".txt";
    fs::path csv = options.out;
    csv += ".csv";
    write_text(txt, text);
    write_text(csv, report.csv_header() + "\n" + report.csv_row() + "\n");
  }
  return text;
}

namespace {

void add_filter_flags(CLI::App& cmd, FilterParams& p, Algorithm algorithm, bool& edge_aware) {
  p.algorithm = algorithm;
  cmd.add_flag("--edge-aware", edge_aware, "Use the edge-aware variant");
  switch (algorithm) {
    case Algorithm::diffuse:
      cmd.add_option("--lambda", p.lambda, "Conductivity coefficient")->capture_default_str();
      cmd.add_option_function<int>("--iters", [&p](int v) { p.iterations = v; }, "Iterations (default 5)");
      cmd.add_option_function<double>("--sigma-s", [&p](double v) { p.sigma_s = v; },
                                      "Preconditioner spatial sigma (default 0.5)");
      cmd.add_option("--sigma-r", p.sigma_r, "Bilateral preconditioner range sigma")->capture_default_str();
      cmd.add_option("--window", p.window, "Bilateral preconditioner window")->capture_default_str();
      cmd.add_option("--time-step", p.time_step, "Explicit update step")->capture_default_str();
      break;
    case Algorithm::bilateral:
      cmd.add_option_function<double>("--sigma-s", [&p](double v) { p.sigma_s = v; },
                                      "Spatial sigma (default 10)");
      cmd.add_option("--sigma-r", p.sigma_r, "Range sigma")->capture_default_str();
      cmd.add_option_function<int>("--iters", [&p](int v) { p.iterations = v; }, "Passes (default 1)");
      cmd.add_option("--cutoff", p.cutoff, "Window half-width, 0 for the default")->capture_default_str();
      cmd.add_option_function<std::string>(
             "--metric",
             [&p](const std::string& v) {
               p.metric = v == "max" ? bilateral::PathMetric::max_path : bilateral::PathMetric::sum_path;
             },
             "Geodesic path cost: sum or max")
          ->check(CLI::IsMember({"sum", "max"}));
      break;
    case Algorithm::meanshift:
      cmd.add_option("--hs", p.h_s, "Spatial bandwidth")->capture_default_str();
      cmd.add_option("--hr", p.h_r, "Range bandwidth")->capture_default_str();
      cmd.add_option("--tau", p.tau, "Feature snap threshold")->capture_default_str();
      cmd.add_option("--eps", p.eps, "Convergence threshold (normalized)")->capture_default_str();
      cmd.add_option("--max-iters", p.max_iterations, "Iteration cap per pixel")->capture_default_str();
      cmd.add_flag_callback("--no-cache", [&p] { p.use_cache = false; }, "Disable the mode cache");
      break;
  }
}

int exit_code(const Error& e) {
  if (dynamic_cast<const ParamError*>(&e)) return 2;
  if (dynamic_cast<const IoError*>(&e)) return 3;
  if (dynamic_cast<const SpecError*>(&e)) return 4;
  if (dynamic_cast<const DimensionMismatch*>(&e)) return 5;
  if (dynamic_cast<const FormatError*>(&e)) return 6;
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge-aware smoothing filters and the Challenge test image", "edgeaware"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "edgeaware 0.1.0");

  std::vector<std::string> shown = args;
  if (!shown.empty()) shown.front() = "edgeaware";
  const std::string command_line = join_args(shown);

  // generate
  GenerateOptions gen;
  int size = 0;
  auto* generate = app.add_subcommand("generate", "Write the Challenge image, regions and manifest");
  generate->add_option("--size", size, "Square side length (sets width and height)");
  generate->add_option("--width", gen.spec.width, "Image width")->capture_default_str();
  generate->add_option("--height", gen.spec.height, "Image height")->capture_default_str();
  generate->add_option("--seed", gen.spec.seed, "Noise seed")->capture_default_str();
  generate->add_option("--sigma-control", gen.spec.noise_sigma_control, "Control rectangle noise sigma")
      ->capture_default_str();
  generate->add_option("--noise-amplitude", gen.spec.noise_amplitude_blocks, "Noisy block amplitude")
      ->capture_default_str();
  generate->add_option("--out", gen.out, "Output PNG")->capture_default_str();

  // filter
  auto* filter = app.add_subcommand("filter", "Run one filter");
  filter->require_subcommand(1);
  struct FilterSlot {
    FilterOptions options;
    bool edge_aware = false;
    CLI::App* cmd = nullptr;
  };
  FilterSlot filter_slots[3];
  const Algorithm algorithms[3] = {Algorithm::diffuse, Algorithm::bilateral, Algorithm::meanshift};
  for (int i = 0; i < 3; ++i) {
    auto& slot = filter_slots[i];
    slot.cmd = filter->add_subcommand(to_string(algorithms[i]));
    add_filter_flags(*slot.cmd, slot.options.params, algorithms[i], slot.edge_aware);
    slot.cmd->add_option("--in", slot.options.in, "Input PNG")->required();
    slot.cmd->add_option("--out", slot.options.out, "Output PNG")->required();
  }

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a two-parameter grid of one filter");
  sweep->require_subcommand(1);
  struct SweepSlot {
    SweepOptions options;
    bool edge_aware = false;
    std::map<std::string, std::string> grids;
    std::string in_regions;
    CLI::App* cmd = nullptr;
  };
  SweepSlot sweep_slots[3];
  for (int i = 0; i < 3; ++i) {
    auto& slot = sweep_slots[i];
    slot.options.base.algorithm = algorithms[i];
    slot.cmd = sweep->add_subcommand(to_string(algorithms[i]));
    slot.cmd->add_flag("--edge-aware", slot.edge_aware, "Use the edge-aware variant");
    auto& p = slot.options.base;
    // Grid axes accept comma lists; other flags are fixed for every cell.
    auto grid = [&slot](const std::string& name, const std::string& help) {
      slot.cmd->add_option("--" + name, slot.grids[name], help + " (comma list when swept)");
    };
    switch (algorithms[i]) {
      case Algorithm::diffuse:
        grid("lambda", "Conductivity coefficient");
        grid("iters", "Iterations");
        grid("sigma-s", "Preconditioner spatial sigma");
        grid("sigma-r", "Bilateral preconditioner range sigma");
        slot.cmd->add_option("--window", p.window, "Bilateral preconditioner window")->capture_default_str();
        slot.cmd->add_option("--time-step", p.time_step, "Explicit update step")->capture_default_str();
        break;
      case Algorithm::bilateral:
        grid("sigma-s", "Spatial sigma");
        grid("sigma-r", "Range sigma");
        grid("iters", "Passes");
        slot.cmd->add_option("--cutoff", p.cutoff, "Window half-width, 0 for the default")
            ->capture_default_str();
        slot.cmd
            ->add_option_function<std::string>(
                "--metric",
                [&p](const std::string& v) {
                  p.metric = v == "max" ? bilateral::PathMetric::max_path : bilateral::PathMetric::sum_path;
                },
                "Geodesic path cost: sum or max")
            ->check(CLI::IsMember({"sum", "max"}));
        break;
      case Algorithm::meanshift:
        grid("hs", "Spatial bandwidth");
        grid("hr", "Range bandwidth");
        slot.cmd->add_option("--tau", p.tau, "Feature snap threshold")->capture_default_str();
        slot.cmd->add_option("--eps", p.eps, "Convergence threshold (normalized)")->capture_default_str();
        slot.cmd->add_option("--max-iters", p.max_iterations, "Iteration cap per pixel")->capture_default_str();
        slot.cmd->add_flag_callback("--no-cache", [&p] { p.use_cache = false; }, "Disable the mode cache");
        break;
    }
    slot.cmd->add_option("--in", slot.options.in, "Input PNG")->required();
    slot.cmd->add_option("--out-dir", slot.options.out_dir, "Output directory")->required();
    slot.cmd->add_option("--regions", slot.in_regions, "Regions sidecar for per-region scores");
  }

  // metrics
  MetricsOptions met;
  std::string reference, regions;
  auto* metrics_cmd = app.add_subcommand("metrics", "Score an image");
  metrics_cmd->add_option("--test", met.test, "Image to score")->required();
  metrics_cmd->add_option("--reference", reference, "Reference (filter input) image");
  metrics_cmd->add_option("--regions", regions, "Regions sidecar");
  metrics_cmd->add_option("--out", met.out, "Output prefix for .txt and .csv");
  metrics_cmd->add_option("--tolerance", met.tolerance, "Novel color tolerance")->capture_default_str();

  std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());
  try {
    app.parse(argv_rest);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << "edgeaware 0.1.0\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*generate) {
      if (size != 0) gen.spec.width = gen.spec.height = size;
      if (size < 0) throw ParamError("--size must be positive");
      cmd_generate(gen, command_line);
      out << "wrote " << gen.out.string() << "\n";
      return 0;
    }
    for (auto& slot : filter_slots) {
      if (!*slot.cmd) continue;
      slot.options.params.edge_aware = slot.edge_aware;
      const FilterReport report = cmd_filter(slot.options, command_line);
      out << "wrote " << slot.options.out.string() << " (" << metrics::format_number(report.wall_seconds)
          << " s)\n";
      return 0;
    }
    for (auto& slot : sweep_slots) {
      if (!*slot.cmd) continue;
      auto& p = slot.options.base;
      p.edge_aware = slot.edge_aware;
      const auto [row_name, col_name] = sweep_axes(p.algorithm, p.edge_aware);
      for (const auto& [name, text] : slot.grids) {
        if (name == row_name || name == col_name) continue;
        if (slot.cmd->count("--" + name) == 0) continue;
        const auto values = parse_grid("--" + name, text);
        if (values.size() != 1) throw ParamError("--" + name + " is not a swept axis here; give one value");
        set_param(p, name, values.front());
      }
      auto axis_values = [&](const std::string& name) {
        if (slot.cmd->count("--" + name) == 0) throw ParamError("--" + name + ": grid is empty");
        return parse_grid("--" + name, slot.grids[name]);
      };
      slot.options.row_values = axis_values(row_name);
      slot.options.col_values = axis_values(col_name);
      if (!slot.in_regions.empty()) slot.options.regions = slot.in_regions;
      cmd_sweep(slot.options, command_line);
      out << "wrote " << slot.options.row_values.size() * slot.options.col_values.size() << " cells to "
          << slot.options.out_dir.string() << "\n";
      return 0;
    }
    if (*metrics_cmd) {
      if (!reference.empty()) met.reference = reference;
      if (!regions.empty()) met.regions = regions;
      out << cmd_metrics(met);
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace edgeaware::cli
