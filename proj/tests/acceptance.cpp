// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "edgeaware/bilateral.hpp"
#include "edgeaware/challenge.hpp"
#include "edgeaware/diffusion.hpp"
#include "edgeaware/meanshift.hpp"
#include "edgeaware/metrics.hpp"
#include "edgeaware/noise.hpp"
#include "support/oracles.hpp"

using namespace edgeaware;
using edgeaware::fixtures::kInf;
namespace fs = std::filesystem;

namespace {

// Tolerances.
constexpr double kFloydTolerance = 1e-9;
constexpr double kConservationRelative = 1e-6;
constexpr double kMaxPrincipleSlack = 1e-9;
constexpr double kDriftEdgeAwareMax = 0.6;
constexpr double kDriftStandardMin = 5.0;
constexpr double kRetentionAtFive = 0.95;
constexpr double kMeanIterationsLo = 1.0;
constexpr double kMeanIterationsHi = 4.0;
constexpr double kCacheSpeedupMin = 3.0;
constexpr double kDonutStandardMin = 0.05;
constexpr double kNovelTolerance = 25.0;
constexpr double kKdeSlack = 1e-9;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buffer[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof buffer, format, args);
  va_end(args);
  return buffer;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

class ThreadOverride {
 public:
  explicit ThreadOverride(const char* value) {
    if (const char* old = std::getenv("EDGEAWARE_THREADS")) saved_ = old;
    setenv("EDGEAWARE_THREADS", value, 1);
  }
  ~ThreadOverride() {
    if (saved_.empty()) {
      unsetenv("EDGEAWARE_THREADS");
    } else {
      setenv("EDGEAWARE_THREADS", saved_.c_str(), 1);
    }
  }

 private:
  std::string saved_;
};

Outcome shortest_path_exactness() {
  std::size_t mismatches = 0;
  std::size_t compared = 0;
  double worst_fw = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Image image = fixtures::random_image(8, 8, seed);
    for (bool minimax : {false, true}) {
      const auto fw = fixtures::floyd_warshall(image, minimax);
      const auto metric = minimax ? bilateral::PathMetric::max_path : bilateral::PathMetric::sum_path;
      for (int o = 0; o < 64; ++o) {
        const Pixel origin{o % 8, o / 8};
        const auto bf = fixtures::bellman_ford(image, origin, minimax);
        const auto map = bilateral::geodesic_distances(image, origin, kInf, 8, metric);
        if (map.expanded_count != 64) ++mismatches;
        for (int i = 0; i < 64; ++i) {
          const double got = map.at(i % 8, i / 8);
          const double want_fw = fw[static_cast<std::size_t>(o) * 64 + i];
          ++compared;
          if (got != bf[static_cast<std::size_t>(i)]) ++mismatches;
          const double diff = std::abs(got - want_fw);
          worst_fw = std::max(worst_fw, diff);
          if (minimax ? diff != 0.0 : diff > kFloydTolerance) ++mismatches;
        }
      }
    }
  }
  return {mismatches == 0, fmt("%zu costs over 200 images x 64 origins x 2 metrics; %zu mismatches; "
                               "exact vs source-ordered oracle, max |diff| vs Floyd-Warshall %.3g",
                               compared, mismatches, worst_fw)};
}

Outcome early_termination() {
  Rng rng(2024);
  std::size_t mismatches = 0, finite = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Image image = fixtures::random_image(24, 24, 1000 + trial);
    const Pixel origin{static_cast<int>(rng.below(24)), static_cast<int>(rng.below(24))};
    const double tau = rng.uniform(0.0, 700.0);
    for (auto metric : {bilateral::PathMetric::sum_path, bilateral::PathMetric::max_path}) {
      const auto full = bilateral::geodesic_distances(image, origin, kInf, 12, metric);
      const auto cut = bilateral::geodesic_distances(image, origin, tau, 12, metric);
      for (std::size_t i = 0; i < full.cost.size(); ++i) {
        const double want = full.cost[i] <= tau ? full.cost[i] : kInf;
        if (cut.cost[i] != want) ++mismatches;
        if (want != kInf) ++finite;
      }
    }
  }
  return {mismatches == 0,
          fmt("50 images, random tau; %zu finite costs compared, %zu mismatches", finite, mismatches)};
}

Outcome edge_awareness_bound() {
  const double sigma_r = 20.0;
  const Rgb a{200, 150, 100};
  const Rgb b{200, 150, 125};
  const Rgb line = a - gray(6.0 * sigma_r / std::sqrt(3.0));
  const int w = 64, h = 48, split = 32;
  Image image = fixtures::step_image(w, h, split, a, b);
  for (int y = 0; y < h; ++y) image.at(split, y) = line;
  const double crossing = std::min(color_distance(a, line), color_distance(b, line));

  bilateral::BilateralConfig config;
  config.sigma_s = 10.0;
  config.sigma_r = sigma_r;
  const Image edge = bilateral::bilateral_edge_aware(image, config).image;
  const Image standard = bilateral::bilateral_standard(image, config).image;
  auto drift = [&](const Image& out) {
    double worst = 0.0;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (x == split) continue;
        for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(out.at(x, y)[c] - image.at(x, y)[c]));
      }
    }
    return worst;
  };
  const double de = drift(edge);
  const double ds = drift(standard);
  const bool fixture_ok = crossing >= 6.0 * sigma_r - 1e-9;
  return {fixture_ok && de < kDriftEdgeAwareMax && ds > kDriftStandardMin,
          fmt("W=%.6g (6 sigma_R=%g); max per-channel drift edge-aware %.4g (< %g), standard %.4g (> %g)",
              crossing, 6.0 * sigma_r, de, kDriftEdgeAwareMax, ds, kDriftStandardMin)};
}

Outcome diffusion_conservation() {
  Rng rng(77);
  double worst_rel = 0.0, worst_escape = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int w = 2 + static_cast<int>(rng.below(30));
    const int h = 2 + static_cast<int>(rng.below(30));
    const Image image = fixtures::random_image(w, h, 5000 + trial);
    const double lambda = trial % 10 == 0 ? 0.0 : rng.uniform(0.0, 0.01);
    const double dt = trial % 4 == 0 ? 0.25 : rng.uniform(0.01, 0.25);
    const auto parity = trial % 2 ? diffusion::Parity::noncausal : diffusion::Parity::causal;
    diffusion::Preconditioner pre = diffusion::GaussianPreconditioner{rng.uniform(0.3, 2.0)};
    if (trial % 3 == 0) pre = diffusion::BilateralPreconditioner{0.5, rng.uniform(10, 100), 5};
    const auto field = diffusion::compute_conductivity(diffusion::precondition(image, pre), lambda, parity);
    const Image out = diffusion::diffuse_step(image, field, dt, parity);
    for (int c = 0; c < 3; ++c) {
      double before = 0.0, after = 0.0, lo = 1e300, hi = -1e300;
      for (const Rgb& p : image.pixels()) {
        before += p[c];
        lo = std::min(lo, p[c]);
        hi = std::max(hi, p[c]);
      }
      for (const Rgb& p : out.pixels()) {
        after += p[c];
        worst_escape = std::max({worst_escape, lo - p[c], p[c] - hi});
      }
      worst_rel = std::max(worst_rel, std::abs(after - before) / std::abs(before));
    }
  }
  return {worst_rel <= kConservationRelative && worst_escape <= kMaxPrincipleSlack,
          fmt("100 random images/configs; max relative sum change %.3g (<= %g), max range escape %.3g (<= %g)",
              worst_rel, kConservationRelative, std::max(0.0, worst_escape), kMaxPrincipleSlack)};
}

Outcome edge_retention_ordering() {
  const int w = 64, h = 32, split = 32;
  const Image image = fixtures::step_image(w, h, split, gray(80), gray(180));
  metrics::EdgeMask mask(w, h);
  for (int y = 0; y < h; ++y) mask.mark_right(split - 1, y);
  bool ordered = true;
  double at_five = 0.0;
  std::string trace;
  for (int iters = 1; iters <= 10; ++iters) {
    diffusion::DiffusionConfig bilateral;
    bilateral.lambda = 0.002;
    bilateral.iterations = iters;
    bilateral.preconditioner = diffusion::BilateralPreconditioner{0.5, 55.0, 5};
    diffusion::DiffusionConfig gaussian = bilateral;
    gaussian.preconditioner = diffusion::GaussianPreconditioner{0.5};
    const double rb = metrics::edge_contrast_retention(image, diffusion::diffuse(image, bilateral).image, mask);
    const double rg = metrics::edge_contrast_retention(image, diffusion::diffuse(image, gaussian).image, mask);
    if (rb < rg) ordered = false;
    if (iters == 5) at_five = rb;
    if (iters == 1 || iters == 5 || iters == 10) trace += fmt(" i=%d %.6f>=%.6f", iters, rb, rg);
  }
  return {ordered && at_five >= kRetentionAtFive,
          fmt("bilateral>=gaussian for i=1..10:%s; i=5 retention %.6f (>= %g)", trace.c_str(), at_five,
              kRetentionAtFive)};
}

Outcome meanshift_convergence(const Challenge& challenge) {
  ThreadOverride sequential("1");
  meanshift::MeanShiftConfig config;
  config.h_s = 5.0;
  config.h_r = 45.0;
  config.convergence_eps = 0.01;
  config.max_iterations = 100;

  // Wall time is the best of three runs; statistics are identical across runs.
  auto run = [&](bool edge, bool cache) {
    config.edge_aware = edge;
    config.use_cache = cache;
    FilterReport best = meanshift::mean_shift_filter(challenge.image, config);
    for (int repeat = 1; repeat < 3; ++repeat) {
      const FilterReport again = meanshift::mean_shift_filter(challenge.image, config);
      best.wall_seconds = std::min(best.wall_seconds, again.wall_seconds);
    }
    return best;
  };
  const FilterReport uncached = run(false, false);
  const FilterReport cached = run(false, true);
  const FilterReport edge_uncached = run(true, false);
  const FilterReport edge_cached = run(true, true);

  bool converged = true;
  for (const FilterReport* r : {&uncached, &cached, &edge_uncached, &edge_cached}) {
    if (r->unconverged_pixels.value_or(1) != 0 || r->max_iterations_used.value_or(100) >= 100) converged = false;
  }
  const double mean_cached = cached.mean_iterations.value_or(-1);
  const double mean_uncached = uncached.mean_iterations.value_or(-1);
  const double speedup = uncached.wall_seconds / cached.wall_seconds;
  const double edge_speedup = edge_uncached.wall_seconds / edge_cached.wall_seconds;
  const bool pass = converged && mean_cached >= kMeanIterationsLo && mean_cached <= kMeanIterationsHi &&
                    std::isfinite(mean_uncached) && speedup >= kCacheSpeedupMin;
  return {pass, fmt("all pixels converged in 4 modes: %s (max used %d/%d/%d/%d); cached mean iterations %.3f "
                    "in [%g, %g]; uncached %.3f; best-of-3 wall speedup %.2fx (>= %g); edge-aware %.3f vs %.3f iterations, "
                    "%.2fx (reported)",
                    converged ? "yes" : "no", uncached.max_iterations_used.value_or(-1),
                    cached.max_iterations_used.value_or(-1), edge_uncached.max_iterations_used.value_or(-1),
                    edge_cached.max_iterations_used.value_or(-1), mean_cached, kMeanIterationsLo,
                    kMeanIterationsHi, mean_uncached, speedup, kCacheSpeedupMin,
                    edge_cached.mean_iterations.value_or(-1), edge_uncached.mean_iterations.value_or(-1),
                    edge_speedup)};
}

Outcome donut_fixture() {
  const double h_r = 20.0;
  const double h_s = 8.0;
  const Rgb core{160, 80, 140};
  const Rgb ring{160, 80, 60};
  const int size = 64;
  const double r_in = 8.0, r_out = 11.0, centre = 31.5;
  Image image(size, size, core);
  std::vector<Pixel> ring_pixels;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double r = std::hypot(x - centre, y - centre);
      if (r >= r_in && r < r_out) {
        image.at(x, y) = ring;
        ring_pixels.push_back({x, y});
      }
    }
  }
  meanshift::MeanShiftConfig config;
  config.h_s = h_s;
  config.h_r = h_r;
  auto captured = [&](bool edge) {
    config.edge_aware = edge;
    const Image out = meanshift::mean_shift_filter(image, config).image;
    std::size_t n = 0;
    for (Pixel p : ring_pixels) {
      if (color_distance(out.at(p), core) < h_r) ++n;
    }
    return static_cast<double>(n) / static_cast<double>(ring_pixels.size());
  };
  const double standard = captured(false);
  const double edge = captured(true);
  return {standard > kDonutStandardMin && edge == 0.0 && color_distance(ring, core) == 4.0 * h_r,
          fmt("|A-B|=%g=4h_r, h_s=%g, ring radii [%g, %g), %zu ring pixels; ring pixels with a core mode: "
              "standard %.1f%% (> %g%%), edge-aware %.1f%% (= 0%%)",
              color_distance(ring, core), h_s, r_in, r_out, ring_pixels.size(), 100 * standard,
              100 * kDonutStandardMin, 100 * edge)};
}

Outcome saturation_orderings(const Challenge& challenge) {
  const Image& input = challenge.image;
  struct Pair {
    const char* name;
    Image standard;
    Image edge;
  };
  std::vector<Pair> pairs;
  {
    bilateral::BilateralConfig config;
    config.sigma_s = 10.0;
    config.sigma_r = 55.0;
    pairs.push_back({"bilateral", bilateral::bilateral_standard(input, config).image,
                     bilateral::bilateral_edge_aware(input, config).image});
  }
  {
    diffusion::DiffusionConfig config;
    config.lambda = 0.002;
    config.iterations = 5;
    config.preconditioner = diffusion::GaussianPreconditioner{0.5};
    Image standard = diffusion::diffuse(input, config).image;
    config.preconditioner = diffusion::BilateralPreconditioner{0.5, 55.0, 5};
    pairs.push_back({"diffusion", std::move(standard), diffusion::diffuse(input, config).image});
  }
  {
    meanshift::MeanShiftConfig config;
    config.h_s = 5.0;
    config.h_r = 45.0;
    Image standard = meanshift::mean_shift_filter(input, config).image;
    config.edge_aware = true;
    pairs.push_back({"meanshift", std::move(standard), meanshift::mean_shift_filter(input, config).image});
  }
  bool pass = true;
  std::string detail;
  for (const Pair& p : pairs) {
    // Scored as written to disk.
    const Image s = p.standard.clamped();
    const Image e = p.edge.clamped();
    const double sat_s = metrics::mean_saturation(s);
    const double sat_e = metrics::mean_saturation(e);
    const double nov_s = metrics::novel_color_fraction(input, s, kNovelTolerance);
    const double nov_e = metrics::novel_color_fraction(input, e, kNovelTolerance);
    if (!(sat_e >= sat_s) || !(nov_e <= nov_s)) pass = false;
    detail += fmt("%s%s saturation %.4f>=%.4f novel %.4f<=%.4f", detail.empty() ? "" : "; ", p.name, sat_e, sat_s,
                  nov_e, nov_s);
  }
  return {pass, detail + fmt(" (input saturation %.4f, tol %g)", metrics::mean_saturation(input), kNovelTolerance)};
}

Outcome kde_ascent() {
  Rng rng(909);
  std::size_t steps = 0, violations = 0;
  double worst = 0.0;
  const double h_s = 5.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Image image = fixtures::random_image(16, 16, 7000 + trial);
    const double h_r = rng.uniform(15.0, 90.0);
    for (int y = 0; y < 16; ++y) {
      for (int x = 0; x < 16; ++x) {
        meanshift::MeanShiftPoint s{static_cast<double>(x), static_cast<double>(y), image.at(x, y)};
        double density = meanshift::kernel_density(image, s, h_s, h_r);
        for (int i = 0; i < 100; ++i) {
          const auto next = meanshift::mean_shift_step(image, s, h_s, h_r);
          const double next_density = meanshift::kernel_density(image, next, h_s, h_r);
          ++steps;
          const double drop = density - next_density;
          worst = std::max(worst, drop);
          if (drop > kKdeSlack) ++violations;
          const double shift = meanshift::normalized_joint_distance(s, next, h_s, h_r);
          s = next;
          density = next_density;
          if (shift * shift < 0.01) break;
        }
      }
    }
  }
  return {violations == 0, fmt("50 images, h_s=%g, random h_r; %zu steps, %zu decreases beyond %g (largest "
                               "decrease %.3g)",
                               h_s, steps, violations, kKdeSlack, std::max(0.0, worst))};
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (path.extension() != ".manifest") return text;
  // Wall time is the one manifest field that is not a function of the inputs.
  std::istringstream lines(text);
  std::string line, kept;
  while (std::getline(lines, line)) {
    if (line.rfind("wall_time_seconds = ", 0) != 0) kept += line + "\n";
  }
  return kept;
}

Outcome cli_determinism() {
  const std::vector<std::vector<std::string>> commands = {
      {"generate", "--size", "128", "--seed", "7", "--out", "challenge.png"},
      {"filter", "diffuse", "--in", "challenge.png", "--out", "diffuse.png"},
      {"filter", "diffuse", "--edge-aware", "--lambda", "0.002", "--iters", "5", "--sigma-s", "0.5", "--sigma-r",
       "55", "--in", "challenge.png", "--out", "diffuse_ea.png"},
      {"filter", "bilateral", "--sigma-s", "5", "--sigma-r", "30", "--in", "challenge.png", "--out", "bil.png"},
      {"filter", "bilateral", "--edge-aware", "--sigma-r", "30", "--iters", "2", "--in", "challenge.png", "--out",
       "bil_ea.png"},
      {"filter", "bilateral", "--edge-aware", "--metric", "max", "--sigma-r", "20", "--in", "challenge.png",
       "--out", "bil_max.png"},
      {"filter", "meanshift", "--hs", "5", "--hr", "45", "--in", "challenge.png", "--out", "ms.png"},
      {"filter", "meanshift", "--edge-aware", "--hs", "5", "--hr", "45", "--in", "challenge.png", "--out",
       "ms_ea.png"},
      {"filter", "meanshift", "--no-cache", "--hs", "3", "--hr", "30", "--in", "challenge.png", "--out",
       "ms_nc.png"},
      {"sweep", "diffuse", "--lambda", "0.0005,0.0105,0.05", "--iters", "1,2,3,4,5", "--in", "challenge.png",
       "--out-dir", "sweep_diffuse", "--regions", "challenge.regions"},
      {"sweep", "diffuse", "--edge-aware", "--lambda", "0.002,0.01", "--iters", "1,3", "--in", "challenge.png",
       "--out-dir", "sweep_diffuse_ea"},
      {"sweep", "bilateral", "--sigma-r", "20,50,80", "--sigma-s", "5,10", "--in", "challenge.png", "--out-dir",
       "sweep_bil", "--regions", "challenge.regions"},
      {"sweep", "bilateral", "--edge-aware", "--sigma-r", "20,40", "--iters", "1,2", "--in", "challenge.png",
       "--out-dir", "sweep_bil_ea"},
      {"sweep", "meanshift", "--hr", "30,60", "--hs", "3,5", "--in", "challenge.png", "--out-dir", "sweep_ms",
       "--regions", "challenge.regions"},
      {"sweep", "meanshift", "--edge-aware", "--hr", "30,60", "--hs", "3,5", "--in", "challenge.png", "--out-dir",
       "sweep_ms_ea"},
      {"metrics", "--test", "bil_ea.png", "--reference", "challenge.png", "--regions", "challenge.regions",
       "--out", "metrics_bil_ea"},
  };
  const fs::path base = fs::temp_directory_path() / "edgeaware_acceptance_determinism";
  fs::remove_all(base);
  const fs::path original = fs::current_path();
  std::string failure;
  for (const char* run : {"first", "second"}) {
    fs::create_directories(base / run);
    fs::current_path(base / run);
    for (auto args : commands) {
      args.insert(args.begin(), "edgeaware");
      std::ostringstream out, err;
      if (cli::run(args, out, err) != 0 && failure.empty()) failure = args[1] + ": " + err.str();
    }
    fs::current_path(original);
  }
  std::size_t files = 0, differing = 0;
  std::string first_diff;
  for (const auto& entry : fs::recursive_directory_iterator(base / "first")) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), base / "first");
    ++files;
    if (!fs::exists(base / "second" / rel) || read_bytes(entry.path()) != read_bytes(base / "second" / rel)) {
      ++differing;
      if (first_diff.empty()) first_diff = rel.string();
    }
  }
  std::size_t second_files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(base / "second")) second_files += entry.is_regular_file();
  const bool pass = failure.empty() && differing == 0 && files == second_files && files > 0;
  std::string detail = fmt("%zu commands run twice; %zu artifacts compared byte for byte (manifest wall time "
                           "excluded); %zu differ",
                           commands.size(), files, differing);
  if (!first_diff.empty()) detail += " (first: " + first_diff + ")";
  if (!failure.empty()) detail += "; command failed: " + failure;
  return {pass, detail};
}

}  // namespace

int main() {
  const Challenge challenge = generate_challenge({});
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"shortest-path exactness", shortest_path_exactness},
      {"early-termination soundness", early_termination},
      {"edge-awareness bound", edge_awareness_bound},
      {"diffusion conservation and maximum principle", diffusion_conservation},
      {"edge-retention ordering", edge_retention_ordering},
      {"mean shift convergence and iteration budget", [&] { return meanshift_convergence(challenge); }},
      {"donut fixture", donut_fixture},
      {"saturation and novel-color orderings", [&] { return saturation_orderings(challenge); }},
      {"KDE ascent", kde_ascent},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += outcome.pass ? 0 : 1;
    std::cout << "criterion " << index << " " << (outcome.pass ? "PASS" : "FAIL") << " " << name << ": "
              << outcome.detail << fmt(" [%.1fs]", seconds_since(start)) << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : fmt("%d criteria failed", failures)) << std::endl;
  return failures == 0 ? 0 : 1;
}
