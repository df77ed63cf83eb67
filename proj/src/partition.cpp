#include "rdh/partition.hpp"

#include <string>

#include "rdh/errors.hpp"

namespace rdh {

std::pair<LayerPartition, LayerPartition> partition(const GrayImage& img,
                                                    int reserved_rows) {
  if (img.width < 6 || img.height < 7)
    throw rdh_error(errc::argument,
                    "image too small to embed: need at least 6x7, got " +
                        std::to_string(img.width) + "x" + std::to_string(img.height));
  if (reserved_rows < 2)
    throw rdh_error(errc::argument, "at least two rows must be reserved");

  // Rows 0..1 and columns 0..1 are margin, as are the last row and column;
  // the bottom reserved_rows rows are excluded on top of that.
  const int row_end = std::min(img.height - 1, img.height - reserved_rows);
  if (row_end <= 2)
    throw rdh_error(errc::argument,
                    "no embeddable rows left after reserving " +
                        std::to_string(reserved_rows) + " rows");

  LayerPartition first{Layer::First, {}};
  LayerPartition second{Layer::Second, {}};
  for (int r = 2; r < row_end; ++r) {
    for (int c = 2; c < img.width - 1; ++c) {
      if (((r + c) & 1) == 0)
        first.cells.emplace_back(r, c);
      else
        second.cells.emplace_back(r, c);
    }
  }
  return {std::move(first), std::move(second)};
}

}  // namespace rdh
