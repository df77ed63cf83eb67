#include "rdh/location_map.hpp"

#include <cstddef>
#include <string>

#include "rdh/bitstream.hpp"
#include "rdh/errors.hpp"

namespace rdh {

namespace {

constexpr int kModeBits = 8;
constexpr int kCountBits = 20;

constexpr std::uint8_t kModeRleBitmap = 0;
constexpr std::uint8_t kModeIndexList = 1;

int index_width(std::size_t pixel_count) {
  int width = 1;
  while ((std::size_t{1} << width) < pixel_count) ++width;
  return width;
}

}  // namespace

std::pair<GrayImage, LocationMap> preprocess_saturation(const GrayImage& img) {
  GrayImage out = img;
  LocationMap map;
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    if (out.data[i] == 255) {
      out.data[i] = 254;
      map.entries.push_back(static_cast<std::uint32_t>(i));
    } else if (out.data[i] == 0) {
      out.data[i] = 1;
      map.entries.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return {std::move(out), std::move(map)};
}

GrayImage postprocess_saturation(const GrayImage& img, const LocationMap& map) {
  GrayImage out = img;
  for (std::uint32_t idx : map.entries) {
    if (idx >= out.data.size())
      throw rdh_error(errc::corruption, "location map index out of range");
    if (out.data[idx] == 254) {
      out.data[idx] = 255;
    } else if (out.data[idx] == 1) {
      out.data[idx] = 0;
    } else {
      throw rdh_error(errc::corruption,
                      "location map points at unsaturated pixel value " +
                          std::to_string(out.data[idx]));
    }
  }
  return out;
}

std::vector<std::uint8_t> encode_location_map(const LocationMap& map,
                                              std::size_t pixel_count) {
  // Mode 0: RLE-compressed bitmap over all pixels.
  std::vector<std::uint8_t> bitmap(pixel_count, 0);
  for (std::uint32_t idx : map.entries) {
    if (idx >= pixel_count)
      throw rdh_error(errc::argument, "location map index out of range");
    bitmap[idx] = 1;
  }
  const std::vector<std::uint8_t> rle = rle_encode(bitmap);

  BitWriter bitmap_blob;
  bitmap_blob.put_uint(kModeRleBitmap, kModeBits);
  for (std::uint8_t byte : rle) bitmap_blob.put_uint(byte, 8);

  // Mode 1: explicit index list.
  const int width = index_width(pixel_count);
  BitWriter list_blob;
  list_blob.put_uint(kModeIndexList, kModeBits);
  list_blob.put_uint(static_cast<std::uint64_t>(map.entries.size()),
                     kCountBits);
  bool list_ok = map.entries.size() < (std::size_t{1} << kCountBits);
  if (list_ok) {
    for (std::uint32_t idx : map.entries) list_blob.put_uint(idx, width);
  }

  if (list_ok && list_blob.bit_count() < bitmap_blob.bit_count())
    return list_blob.take();
  return bitmap_blob.take();
}

LocationMap decode_location_map(const std::vector<std::uint8_t>& bits,
                                std::size_t pixel_count) {
  BitReader reader(bits);
  const auto mode = static_cast<std::uint8_t>(reader.get_uint(kModeBits));
  LocationMap map;
  if (mode == kModeRleBitmap) {
    std::vector<std::uint8_t> rle;
    while (reader.remaining() >= 8)
      rle.push_back(static_cast<std::uint8_t>(reader.get_uint(8)));
    const std::vector<std::uint8_t> bitmap = rle_decode(rle, pixel_count);
    for (std::size_t i = 0; i < pixel_count; ++i)
      if (bitmap[i]) map.entries.push_back(static_cast<std::uint32_t>(i));
  } else if (mode == kModeIndexList) {
    const auto count = static_cast<std::size_t>(reader.get_uint(kCountBits));
    const int width = index_width(pixel_count);
    for (std::size_t i = 0; i < count; ++i) {
      const auto idx = static_cast<std::uint32_t>(reader.get_uint(width));
      if (idx >= pixel_count)
        throw rdh_error(errc::corruption, "location map index out of range");
      if (!map.entries.empty() && idx <= map.entries.back())
        throw rdh_error(errc::corruption, "location map indices not ascending");
      map.entries.push_back(idx);
    }
  } else {
    throw rdh_error(errc::corruption, "unknown location map mode");
  }
  return map;
}

}  // namespace rdh
