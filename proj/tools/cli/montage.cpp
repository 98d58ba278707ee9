#include "cli/montage.hpp"

#include <algorithm>

#include "edgeaware/errors.hpp"

namespace edgeaware::cli {

Image montage(const std::vector<Image>& cells, int rows, int cols, int gap) {
  if (rows < 1 || cols < 1 || cells.size() != static_cast<std::size_t>(rows) * cols) {
    throw ParamError("montage needs exactly rows x cols cells");
  }
  std::vector<int> col_w(static_cast<std::size_t>(cols), 0);
  std::vector<int> row_h(static_cast<std::size_t>(rows), 0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const Image& cell = cells[static_cast<std::size_t>(r * cols + c)];
      col_w[static_cast<std::size_t>(c)] = std::max(col_w[static_cast<std::size_t>(c)], cell.width());
      row_h[static_cast<std::size_t>(r)] = std::max(row_h[static_cast<std::size_t>(r)], cell.height());
    }
  }
  int width = gap;
  for (int w : col_w) width += w + gap;
  int height = gap;
  for (int h : row_h) height += h + gap;

  Image sheet(width, height, gray(32));
  int y0 = gap;
  for (int r = 0; r < rows; ++r) {
    int x0 = gap;
    for (int c = 0; c < cols; ++c) {
      const Image& cell = cells[static_cast<std::size_t>(r * cols + c)];
      for (int y = 0; y < cell.height(); ++y) {
        for (int x = 0; x < cell.width(); ++x) sheet.at(x0 + x, y0 + y) = cell.at(x, y);
      }
      x0 += col_w[static_cast<std::size_t>(c)] + gap;
    }
    y0 += row_h[static_cast<std::size_t>(r)] + gap;
  }
  return sheet;
}

}  // namespace edgeaware::cli
