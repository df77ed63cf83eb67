#include "rdh/image.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "rdh/errors.hpp"

namespace rdh {

namespace {

[[noreturn]] void decode_fail(std::size_t offset, const std::string& why) {
  throw rdh_error(errc::decode,
                  "PGM decode error at byte " + std::to_string(offset) + ": " + why);
}

bool is_pnm_space(int ch) {
  return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n';
}

// Skips whitespace and `#` comment lines between header tokens.
void skip_separators(const std::vector<std::uint8_t>& bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    if (is_pnm_space(bytes[pos])) {
      ++pos;
    } else if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
}

long parse_header_int(const std::vector<std::uint8_t>& bytes, std::size_t& pos,
                      const char* field) {
  skip_separators(bytes, pos);
  if (pos >= bytes.size() || bytes[pos] < '0' || bytes[pos] > '9')
    decode_fail(pos, std::string("expected ") + field);
  long value = 0;
  while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
    value = value * 10 + (bytes[pos] - '0');
    if (value > 1'000'000'000L) decode_fail(pos, std::string(field) + " out of range");
    ++pos;
  }
  return value;
}

}  // namespace

GrayImage load_image(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 0;
  if (bytes.size() < 2 || bytes[0] != 'P')
    decode_fail(0, "not a PNM file");
  if (bytes[1] != '5')
    decode_fail(1, "unsupported PNM type (only binary P5 grayscale accepted)");
  pos = 2;

  const long w = parse_header_int(bytes, pos, "width");
  const long h = parse_header_int(bytes, pos, "height");
  const long maxval = parse_header_int(bytes, pos, "maxval");
  if (w <= 0 || h <= 0) decode_fail(pos, "non-positive dimensions");
  if (maxval != 255) decode_fail(pos, "maxval must be 255");
  if (pos >= bytes.size() || !is_pnm_space(bytes[pos]))
    decode_fail(pos, "expected single whitespace after maxval");
  ++pos;  // exactly one separator byte before the raster

  GrayImage img(static_cast<int>(w), static_cast<int>(h));
  if (bytes.size() - pos < img.pixel_count())
    decode_fail(bytes.size(), "truncated pixel payload");
  std::copy(bytes.begin() + pos, bytes.begin() + pos + img.pixel_count(),
            img.data.begin());
  return img;
}

GrayImage load_image_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rdh_error(errc::io, "cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw rdh_error(errc::io, "read failure on " + path);
  return load_image(bytes);
}

std::vector<std::uint8_t> save_image(const GrayImage& img) {
  std::string header = "P5\n" + std::to_string(img.width) + " " +
                       std::to_string(img.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.data.begin(), img.data.end());
  return out;
}

void save_image_file(const GrayImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw rdh_error(errc::io, "cannot open " + path + " for writing");
  auto bytes = save_image(img);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw rdh_error(errc::io, "write failure on " + path);
}

double mse(const GrayImage& a, const GrayImage& b) {
  if (a.width != b.width || a.height != b.height)
    throw rdh_error(errc::argument, "mse: image dimensions differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
    sum += d * d;
  }
  return sum / static_cast<double>(a.data.size());
}

double psnr(const GrayImage& a, const GrayImage& b) {
  const double m = mse(a, b);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / m);
}

}  // namespace rdh
