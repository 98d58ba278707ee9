#include "cli/manifest.hpp"

#include <fstream>
#include <sstream>

#include "edgeaware/errors.hpp"
#include "edgeaware/metrics.hpp"

namespace edgeaware::cli {

void Manifest::set(std::string key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

void Manifest::set(std::string key, double value) {
  set(std::move(key), metrics::format_number(value));
}

void Manifest::set(std::string key, long long value) {
  set(std::move(key), std::to_string(value));
}

std::string Manifest::text() const {
  std::ostringstream out;
  for (const auto& [k, v] : entries_) out << k << " = " << v << '\n';
  return out.str();
}

void Manifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  out << text();
  if (!out) throw IoError("cannot write manifest: " + path.string());
}

std::filesystem::path sidecar_path(const std::filesystem::path& image, const std::string& suffix) {
  std::filesystem::path out = image;
  out.replace_extension(suffix);
  return out;
}

}  // namespace edgeaware::cli
