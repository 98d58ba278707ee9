#include "edgeaware/report.hpp"

#include <cstdio>
#include <numeric>

namespace edgeaware {

namespace {

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out += ',';
    out += number(values[i]);
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> FilterReport::statistics() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("iterations", std::to_string(iterations));
  if (!mean_abs_update.empty()) out.emplace_back("mean_abs_update", join(mean_abs_update));
  if (!mean_expanded.empty()) {
    out.emplace_back("mean_expanded_count", join(mean_expanded));
    const double total = std::accumulate(mean_expanded.begin(), mean_expanded.end(), 0.0);
    out.emplace_back("mean_expanded_count_overall",
                     number(total / static_cast<double>(mean_expanded.size())));
  }
  if (mean_iterations) out.emplace_back("mean_iterations", number(*mean_iterations));
  if (max_iterations_used) out.emplace_back("max_iterations_used", std::to_string(*max_iterations_used));
  if (unconverged_pixels) out.emplace_back("unconverged_pixels", std::to_string(*unconverged_pixels));
  if (snap_fallbacks) out.emplace_back("snap_fallbacks", std::to_string(*snap_fallbacks));
  if (cache_hits) out.emplace_back("cache_hits", std::to_string(*cache_hits));
  return out;
}

}  // namespace edgeaware
