#ifndef RDH_LOCATION_MAP_HPP
#define RDH_LOCATION_MAP_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "rdh/image.hpp"

namespace rdh {

// Raster indices of pixels that were saturated (0 or 255) before
// preprocessing pulled them to 1 / 254.
struct LocationMap {
  std::vector<std::uint32_t> entries;  // ascending raster indices

  bool operator==(const LocationMap&) const = default;
};

// Pulls every 255 down to 254 and every 0 up to 1 across the whole image,
// recording the touched raster indices. After this, any +-1 modification
// stays inside [0, 255].
std::pair<GrayImage, LocationMap> preprocess_saturation(const GrayImage& img);

// Inverse of preprocess_saturation: at each recorded index, 254 -> 255 and
// 1 -> 0. A recorded index holding any other value raises errc::corruption.
GrayImage postprocess_saturation(const GrayImage& img, const LocationMap& map);

// Serializes the map for `pixel_count` pixels as a bit vector. The blob is
// [mode:8] followed by either an RLE-compressed per-pixel bitmap (mode 0)
// or [count:20][index:ceil(log2(pixel_count)) each] (mode 1); the encoder
// picks whichever is smaller.
std::vector<std::uint8_t> encode_location_map(const LocationMap& map,
                                              std::size_t pixel_count);
LocationMap decode_location_map(const std::vector<std::uint8_t>& bits,
                                std::size_t pixel_count);

}  // namespace rdh

#endif  // RDH_LOCATION_MAP_HPP
