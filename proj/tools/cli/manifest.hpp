#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace edgeaware::cli {

/// Ordered `key = value` record written next to every output image.
class Manifest {
 public:
  void set(std::string key, std::string value);
  void set(std::string key, double value);
  void set(std::string key, long long value);

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  std::string text() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// `dir/name.png` -> `dir/name<suffix>`.
std::filesystem::path sidecar_path(const std::filesystem::path& image, const std::string& suffix);

}  // namespace edgeaware::cli
