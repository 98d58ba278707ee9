#pragma once

#include <vector>

#include "edgeaware/image.hpp"

namespace edgeaware::cli {

/// Tiles `cells` (row-major, `rows` x `cols`) into one contact sheet with a
/// dark gutter of `gap` pixels. Cells may differ in size; each slot takes
/// the largest cell extent of its row and column.
Image montage(const std::vector<Image>& cells, int rows, int cols, int gap = 4);

}  // namespace edgeaware::cli
