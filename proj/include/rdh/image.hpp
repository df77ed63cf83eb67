#ifndef RDH_IMAGE_HPP
#define RDH_IMAGE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace rdh {

// 8-bit grayscale raster stored row-major: data[r * width + c].
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  GrayImage() = default;
  GrayImage(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t& at(int r, int c) {
    return data[static_cast<std::size_t>(r) * width + c];
  }
  std::uint8_t at(int r, int c) const {
    return data[static_cast<std::size_t>(r) * width + c];
  }
  std::size_t pixel_count() const { return data.size(); }

  bool operator==(const GrayImage&) const = default;
};

// Parses a binary PGM (P5, maxval 255). Any other format, a malformed
// header, or a truncated payload raises errc::decode naming the byte offset.
GrayImage load_image(const std::vector<std::uint8_t>& bytes);
GrayImage load_image_file(const std::string& path);

// Serializes as `P5\n<w> <h>\n255\n` followed by raw pixel bytes.
std::vector<std::uint8_t> save_image(const GrayImage& img);
void save_image_file(const GrayImage& img, const std::string& path);

// Mean squared error between two images of identical dimensions.
double mse(const GrayImage& a, const GrayImage& b);

// 10*log10(255^2 / MSE); +infinity when the images are identical.
double psnr(const GrayImage& a, const GrayImage& b);

}  // namespace rdh

#endif  // RDH_IMAGE_HPP
