#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "rdh/errors.hpp"
#include "rdh/image.hpp"
#include "rdh/location_map.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using rdh::errc;
using rdh::GrayImage;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& header,
                                   std::initializer_list<int> pixels) {
  std::vector<std::uint8_t> out(header.begin(), header.end());
  for (int p : pixels) out.push_back(static_cast<std::uint8_t>(p));
  return out;
}

template <typename Fn>
errc thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const rdh::rdh_error& e) {
    return e.code();
  }
  FAIL("expected an rdh_error");
  return errc::argument;
}

}  // namespace

TEST_SUITE("image") {

TEST_CASE("parses a minimal binary PGM") {
  const auto bytes = bytes_of("P5\n2 2\n255\n", {0, 128, 255, 7});
  const GrayImage img = rdh::load_image(bytes);
  CHECK(img.width == 2);
  CHECK(img.height == 2);
  REQUIRE(img.data.size() == 4);
  CHECK(img.at(0, 0) == 0);
  CHECK(img.at(0, 1) == 128);
  CHECK(img.at(1, 0) == 255);
  CHECK(img.at(1, 1) == 7);
}

TEST_CASE("accepts comments and extra whitespace between header tokens") {
  const auto bytes = bytes_of("P5 # binary\n# full comment line\n 2\t2 \n255\n",
                              {1, 2, 3, 4});
  const GrayImage img = rdh::load_image(bytes);
  CHECK(img.width == 2);
  CHECK(img.height == 2);
  CHECK(img.at(1, 1) == 4);
}

TEST_CASE("rejects color and ASCII PNM variants") {
  CHECK(thrown_code([] {
          rdh::load_image(bytes_of("P6\n2 2\n255\n", {0, 0, 0, 0}));
        }) == errc::decode);
  CHECK(thrown_code([] {
          rdh::load_image(bytes_of("P2\n2 2\n255\n", {0, 0, 0, 0}));
        }) == errc::decode);
}

TEST_CASE("rejects malformed headers") {
  CHECK(thrown_code([] { rdh::load_image({}); }) == errc::decode);
  CHECK(thrown_code([] {
          rdh::load_image(bytes_of("P5\nx 2\n255\n", {0, 0, 0, 0}));
        }) == errc::decode);
  CHECK(thrown_code([] {
          rdh::load_image(bytes_of("P5\n2 2\n65535\n", {0, 0, 0, 0}));
        }) == errc::decode);
  CHECK(thrown_code([] {
          rdh::load_image(bytes_of("P5\n0 2\n255\n", {}));
        }) == errc::decode);
}

TEST_CASE("rejects a truncated pixel payload") {
  CHECK(thrown_code([] {
          rdh::load_image(bytes_of("P5\n2 2\n255\n", {0, 1, 2}));
        }) == errc::decode);
}

TEST_CASE("save emits the canonical header and raw rows") {
  GrayImage img(3, 2);
  for (int i = 0; i < 6; ++i) img.data[static_cast<std::size_t>(i)] = i * 10;
  const auto bytes = rdh::save_image(img);
  const std::string header = "P5\n3 2\n255\n";
  REQUIRE(bytes.size() == header.size() + 6);
  CHECK(std::string(bytes.begin(), bytes.begin() + header.size()) == header);
  CHECK(bytes[header.size()] == 0);
  CHECK(bytes.back() == 50);
}

TEST_CASE("save then load is the identity on random images") {
  std::mt19937 rng(101);
  for (int i = 0; i < 20; ++i) {
    std::uniform_int_distribution<int> dim(1, 40);
    const GrayImage img =
        testsupport::random_image(dim(rng), dim(rng), rng);
    CHECK(rdh::load_image(rdh::save_image(img)) == img);
  }
}

TEST_CASE("file round trip and missing-file error") {
  const std::string path = "test_image_roundtrip.pgm";
  std::mt19937 rng(7);
  const GrayImage img = testsupport::random_image(9, 5, rng);
  rdh::save_image_file(img, path);
  CHECK(rdh::load_image_file(path) == img);
  std::remove(path.c_str());
  CHECK(thrown_code([&] { rdh::load_image_file(path); }) == errc::io);
}

TEST_CASE("psnr of identical images is infinite") {
  const GrayImage img(8, 8, 77);
  CHECK(std::isinf(rdh::psnr(img, img)));
  CHECK(rdh::psnr(img, img) > 0.0);
  CHECK(rdh::mse(img, img) == 0.0);
}

TEST_CASE("psnr of a uniform one-level difference is 48.1308 dB") {
  GrayImage a(16, 16, 100);
  GrayImage b(16, 16, 101);
  CHECK(rdh::psnr(a, b) == doctest::Approx(48.1308).epsilon(1e-6));
}

TEST_CASE("psnr matches the direct-sum reference on random pairs") {
  std::mt19937 rng(42);
  for (int i = 0; i < 10; ++i) {
    const GrayImage a = testsupport::random_image(23, 17, rng);
    const GrayImage b = testsupport::random_image(23, 17, rng);
    CHECK(rdh::psnr(a, b) == doctest::Approx(oracles::psnr(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("psnr rejects dimension mismatches") {
  CHECK(thrown_code([] {
          rdh::psnr(GrayImage(4, 4), GrayImage(4, 5));
        }) == errc::argument);
}

// ----------------------------------------------------------- saturation map

TEST_CASE("preprocess pulls saturated values inward and records them") {
  GrayImage img(3, 1);
  img.data = {0, 128, 255};
  const auto [processed, map] = rdh::preprocess_saturation(img);
  CHECK(processed.data == std::vector<std::uint8_t>{1, 128, 254});
  CHECK(map.entries == std::vector<std::uint32_t>{0, 2});
}

TEST_CASE("postprocess restores exactly the recorded pixels") {
  GrayImage img(3, 1);
  img.data = {0, 128, 255};
  const auto [processed, map] = rdh::preprocess_saturation(img);
  CHECK(rdh::postprocess_saturation(processed, map) == img);
}

TEST_CASE("postprocess rejects a recorded pixel with a foreign value") {
  GrayImage img(3, 1);
  img.data = {0, 128, 255};
  auto [processed, map] = rdh::preprocess_saturation(img);
  processed.data[0] = 9;  // neither 1 nor 254
  CHECK(thrown_code([&] { rdh::postprocess_saturation(processed, map); }) ==
        errc::corruption);
  rdh::LocationMap out_of_range;
  out_of_range.entries = {99};
  CHECK(thrown_code([&] { rdh::postprocess_saturation(img, out_of_range); }) ==
        errc::corruption);
}

TEST_CASE("saturation round trip on 1000 random saturation-heavy images") {
  std::mt19937 rng(2026);
  std::uniform_int_distribution<int> kind(0, 4);
  for (int i = 0; i < 1000; ++i) {
    GrayImage img(16, 16);
    for (auto& p : img.data) {
      switch (kind(rng)) {
        case 0: p = 0; break;
        case 1: p = 255; break;
        case 2: p = 1; break;
        case 3: p = 254; break;
        default: p = static_cast<std::uint8_t>(rng() & 0xff); break;
      }
    }
    const auto [processed, map] = rdh::preprocess_saturation(img);
    for (auto p : processed.data) {
      CHECK(p >= 1);
      CHECK(p <= 254);
    }
    CHECK(rdh::postprocess_saturation(processed, map) == img);
  }
}

TEST_CASE("location map blob round-trips in both sparse and dense regimes") {
  std::mt19937 rng(11);
  const std::size_t pixels = 64 * 64;
  for (int density_pow = 0; density_pow < 8; ++density_pow) {
    rdh::LocationMap map;
    const std::size_t count = std::size_t{1} << density_pow;
    std::uniform_int_distribution<std::uint32_t> d(0, pixels - 1);
    std::vector<bool> used(pixels, false);
    while (map.entries.size() < count) {
      const std::uint32_t idx = d(rng);
      if (used[idx]) continue;
      used[idx] = true;
      map.entries.push_back(idx);
    }
    std::sort(map.entries.begin(), map.entries.end());
    const auto blob = rdh::encode_location_map(map, pixels);
    CHECK(rdh::decode_location_map(blob, pixels) == map);
  }
  // Empty map round trip.
  const auto blob = rdh::encode_location_map({}, pixels);
  CHECK(rdh::decode_location_map(blob, pixels).entries.empty());
}

}  // TEST_SUITE
