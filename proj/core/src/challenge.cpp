#include "edgeaware/challenge.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "edgeaware/errors.hpp"
#include "edgeaware/noise.hpp"

namespace edgeaware {

namespace {

constexpr int kMinDimension = 128;
constexpr int kSeparatorWidth = 2;
constexpr int kBlobCount = 6;

int frac(double fraction, int extent) { return static_cast<int>(std::lround(fraction * extent)); }

Rgb clamp_color(Rgb c) {
  for (int k = 0; k < 3; ++k) c[k] = std::clamp(c[k], 0.0, 255.0);
  return c;
}

ChallengeRegions layout(int width, int height) {
  const int margin = frac(0.03, width);
  const int main_right = frac(0.70, width);
  const int band_top = frac(0.06, height);
  const int band_bottom = frac(0.36, height);
  const int separator_x = frac(0.36, width);

  ChallengeRegions regions;
  auto add = [&](std::string name, Box box) { regions.boxes.push_back({std::move(name), box}); };

  add("gradient", {margin, band_top, separator_x - margin, band_bottom - band_top});
  add("separator", {separator_x, band_top, kSeparatorWidth, band_bottom - band_top});
  const int orange_x = separator_x + kSeparatorWidth;
  add("orange", {orange_x, band_top, main_right - margin - orange_x, band_bottom - band_top});

  const int field_top = frac(0.42, height);
  const Box field{0, field_top, main_right, height - field_top};
  add("blob_field", field);

  const int pad = frac(0.04, width);
  const int rect_w = (field.w - 3 * pad) / 2;
  const int rect_h = (field.h - 3 * pad) / 2;
  const char* names[4] = {"noisy_red", "noisy_green", "noisy_yellow", "noisy_purple"};
  for (int i = 0; i < 4; ++i) {
    const int col = i % 2;
    const int row = i / 2;
    add(names[i], {field.x + pad + col * (rect_w + pad), field.y + pad + row * (rect_h + pad),
                   rect_w, rect_h});
  }

  const int column_x = main_right + margin;
  const int column_w = width - margin - column_x;
  const int gap = frac(0.02, height);
  const int control_h = (height - 2 * margin - 5 * gap) / 6;
  for (int i = 0; i < 6; ++i) {
    add("control_" + std::to_string(i),
        {column_x, margin + i * (control_h + gap), column_w, control_h});
  }
  return regions;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::optional<Box> ChallengeRegions::find(std::string_view name) const {
  for (const NamedBox& nb : boxes) {
    if (nb.name == name) return nb.box;
  }
  return std::nullopt;
}

Box ChallengeRegions::at(std::string_view name) const {
  if (auto box = find(name)) return *box;
  throw ParamError("unknown region: " + std::string(name));
}

std::vector<NamedBox> ChallengeRegions::noisy_rects() const {
  std::vector<NamedBox> out;
  for (const NamedBox& nb : boxes) {
    if (nb.name.starts_with("noisy_")) out.push_back(nb);
  }
  return out;
}

std::vector<NamedBox> ChallengeRegions::control_rects() const {
  std::vector<NamedBox> out;
  for (const NamedBox& nb : boxes) {
    if (nb.name.starts_with("control_")) out.push_back(nb);
  }
  return out;
}

Challenge generate_challenge(const ChallengeSpec& spec) {
  if (spec.width < kMinDimension || spec.height < kMinDimension) {
    throw SpecError("challenge image must be at least " + std::to_string(kMinDimension) + "x" +
                    std::to_string(kMinDimension) + ", got " + std::to_string(spec.width) + "x" +
                    std::to_string(spec.height));
  }
  if (!(spec.noise_sigma_control >= 0.0) || !(spec.noise_amplitude_blocks >= 0.0)) {
    throw SpecError("challenge noise levels must be >= 0");
  }

  namespace pal = challenge_palette;
  ChallengeRegions regions = layout(spec.width, spec.height);
  Image image(spec.width, spec.height, pal::white);
  Rng rng(spec.seed);

  const Box gradient = regions.at("gradient");
  for (int y = gradient.y; y < gradient.bottom(); ++y) {
    for (int x = gradient.x; x < gradient.right(); ++x) {
      const double t = static_cast<double>(x - gradient.x) / (gradient.w - 1);
      image.at(x, y) = pal::white * (1.0 - t) + pal::red * t;
    }
  }
  const Box separator = regions.at("separator");
  const Box orange = regions.at("orange");
  for (int y = separator.y; y < separator.bottom(); ++y) {
    for (int x = separator.x; x < separator.right(); ++x) image.at(x, y) = pal::black;
    for (int x = orange.x; x < orange.right(); ++x) image.at(x, y) = pal::orange;
  }

  // Blob field: Voronoi cells around seeded centers, each with its own
  // dominant color plus heavy per-channel noise.
  const Box field = regions.at("blob_field");
  Pixel centers[kBlobCount];
  for (Pixel& c : centers) {
    c.x = field.x + static_cast<int>(rng.below(static_cast<std::uint64_t>(field.w)));
    c.y = field.y + static_cast<int>(rng.below(static_cast<std::uint64_t>(field.h)));
  }
  const double amplitude = spec.noise_amplitude_blocks;
  for (int y = field.y; y < field.bottom(); ++y) {
    for (int x = field.x; x < field.right(); ++x) {
      int best = 0;
      long best_d = std::numeric_limits<long>::max();
      for (int i = 0; i < kBlobCount; ++i) {
        const long dx = x - centers[i].x;
        const long dy = y - centers[i].y;
        if (dx * dx + dy * dy < best_d) {
          best_d = dx * dx + dy * dy;
          best = i;
        }
      }
      Rgb c = pal::blobs[best];
      for (int k = 0; k < 3; ++k) c[k] += amplitude * rng.normal();
      image.at(x, y) = clamp_color(c);
    }
  }

  // Black rectangles with colored noise: dominant color scaled by a uniform
  // factor, plus a smaller per-channel perturbation.
  const Rgb dominants[4] = {pal::noisy_red, pal::noisy_green, pal::noisy_yellow, pal::noisy_purple};
  const auto noisy = regions.noisy_rects();
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    const Box& box = noisy[i].box;
    for (int y = box.y; y < box.bottom(); ++y) {
      for (int x = box.x; x < box.right(); ++x) {
        Rgb c = dominants[i] * rng.uniform();
        for (int k = 0; k < 3; ++k) c[k] += 0.25 * amplitude * rng.normal();
        image.at(x, y) = clamp_color(c);
      }
    }
  }

  const auto controls = regions.control_rects();
  for (std::size_t i = 0; i < controls.size(); ++i) {
    const Box& box = controls[i].box;
    for (int y = box.y; y < box.bottom(); ++y) {
      for (int x = box.x; x < box.right(); ++x) {
        Rgb c = pal::controls[i];
        for (int k = 0; k < 3; ++k) c[k] += spec.noise_sigma_control * rng.normal();
        image.at(x, y) = clamp_color(c);
      }
    }
  }

  return {std::move(image), std::move(regions)};
}

std::string format_regions(const ChallengeRegions& regions) {
  std::ostringstream out;
  for (const NamedBox& nb : regions.boxes) {
    out << nb.name << " = " << nb.box.x << ',' << nb.box.y << ',' << nb.box.w << ',' << nb.box.h
        << '\n';
  }
  return out.str();
}

ChallengeRegions parse_regions(std::string_view text) {
  ChallengeRegions regions;
  int line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParamError("regions line " + std::to_string(line_no) + ": expected 'name = x,y,w,h'");
    }
    NamedBox nb{std::string(trim(line.substr(0, eq))), {}};
    std::string_view rest = trim(line.substr(eq + 1));
    int* fields[4] = {&nb.box.x, &nb.box.y, &nb.box.w, &nb.box.h};
    for (int i = 0; i < 4; ++i) {
      rest = trim(rest);
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), *fields[i]);
      if (ec != std::errc{}) {
        throw ParamError("regions line " + std::to_string(line_no) + ": bad integer");
      }
      rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
      rest = trim(rest);
      if (i < 3) {
        if (rest.empty() || rest.front() != ',') {
          throw ParamError("regions line " + std::to_string(line_no) + ": expected ','");
        }
        rest.remove_prefix(1);
      }
    }
    if (!rest.empty() || nb.name.empty()) {
      throw ParamError("regions line " + std::to_string(line_no) + ": trailing characters");
    }
    regions.boxes.push_back(std::move(nb));
  }
  return regions;
}

void write_regions(const ChallengeRegions& regions, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  out << format_regions(regions);
  if (!out) throw IoError("cannot write regions file: " + path.string());
}

ChallengeRegions read_regions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open regions file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_regions(buf.str());
}

}  // namespace edgeaware
