#ifndef RDH_PARTITION_HPP
#define RDH_PARTITION_HPP

#include <utility>
#include <vector>

#include "rdh/image.hpp"

namespace rdh {

enum class Layer { First, Second };

// One checkerboard half of the embeddable region, cells in raster order.
struct LayerPartition {
  Layer layer;
  std::vector<std::pair<int, int>> cells;  // (row, col)
};

// Splits the embeddable cells of `img` into the two checkerboard layers:
// (r+c) even -> First, odd -> Second. Excluded are the margin (row < 2,
// col < 2, row >= height-1, col >= width-1) and the bottom `reserved_rows`
// full rows, which hold auxiliary information in their LSBs.
// Requires width >= 6 and height >= 7, and at least one embeddable row
// under the given reservation; raises errc::argument otherwise.
std::pair<LayerPartition, LayerPartition> partition(const GrayImage& img,
                                                    int reserved_rows = 2);

}  // namespace rdh

#endif  // RDH_PARTITION_HPP
