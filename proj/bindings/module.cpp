// Python bindings: numpy 2-D uint8 arrays map to grayscale images; payloads
// are 1-D uint8 arrays holding one bit per element.
#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>

#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdh/codec.hpp"
#include "rdh/errors.hpp"
#include "rdh/image.hpp"

namespace py = pybind11;

namespace {

rdh::GrayImage to_image(const py::array_t<std::uint8_t>& arr) {
  if (arr.ndim() != 2)
    throw py::value_error("expected a 2-D uint8 array (height, width)");
  const auto view = arr.unchecked<2>();
  rdh::GrayImage img(static_cast<int>(arr.shape(1)),
                     static_cast<int>(arr.shape(0)), 0);
  for (py::ssize_t r = 0; r < arr.shape(0); ++r)
    for (py::ssize_t c = 0; c < arr.shape(1); ++c)
      img.at(static_cast<int>(r), static_cast<int>(c)) = view(r, c);
  return img;
}

py::array_t<std::uint8_t> from_image(const rdh::GrayImage& img) {
  py::array_t<std::uint8_t> arr({img.height, img.width});
  std::memcpy(arr.mutable_data(), img.data.data(), img.data.size());
  return arr;
}

std::vector<std::uint8_t> to_bits(const py::array_t<std::uint8_t>& arr) {
  if (arr.ndim() != 1)
    throw py::value_error("expected a 1-D uint8 array of payload bits");
  const auto view = arr.unchecked<1>();
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(arr.shape(0)));
  for (py::ssize_t i = 0; i < arr.shape(0); ++i) bits[i] = view(i);
  return bits;
}

py::array_t<std::uint8_t> from_bits(const std::vector<std::uint8_t>& bits) {
  py::array_t<std::uint8_t> arr(static_cast<py::ssize_t>(bits.size()));
  std::memcpy(arr.mutable_data(), bits.data(), bits.size());
  return arr;
}

rdh::EmbedConfig make_config(const std::string& pair, int classes, int hmin,
                             int delta, const std::string& objective) {
  rdh::EmbedConfig cfg;
  if (pair == "nonlinear")
    cfg.pair = rdh::PredictorPair::rhombus_nonlinear;
  else if (pair == "med")
    cfg.pair = rdh::PredictorPair::rhombus_med;
  else if (pair == "rhombus")
    cfg.pair = rdh::PredictorPair::rhombus_rhombus;
  else
    throw py::value_error("pair must be nonlinear, med, or rhombus");
  cfg.m = classes;
  cfg.hmin = hmin;
  cfg.delta = delta;
  if (objective == "distortion")
    cfg.objective = rdh::Objective::min_total_distortion;
  else if (objective == "ratio")
    cfg.objective = rdh::Objective::min_distortion_ratio;
  else
    throw py::value_error("objective must be distortion or ratio");
  return cfg;
}

py::dict stats_dict(const rdh::EmbedStats& st) {
  py::dict d;
  d["payload_bits"] = st.payload_bits;
  d["aux_bits"] = st.aux_bits;
  d["reserved_rows"] = st.reserved_rows;
  py::list layers;
  for (const rdh::LayerReport& lr : st.layers) {
    py::dict l;
    l["planned_ec"] = lr.planned_ec;
    l["planned_ed2"] = lr.planned_ed2;
    l["n_end"] = lr.n_end;
    layers.append(l);
  }
  d["layers"] = layers;
  return d;
}

}  // namespace

PYBIND11_MODULE(rdhpy, m) {
  m.doc() = "Reversible data hiding on 8-bit grayscale images";

  py::register_exception<rdh::rdh_error>(m, "RdhError");

  m.def(
      "load_image",
      [](const std::string& path) {
        return from_image(rdh::load_image_file(path));
      },
      py::arg("path"), "Load a binary PGM file as a (h, w) uint8 array");

  m.def(
      "save_image",
      [](const py::array_t<std::uint8_t>& arr, const std::string& path) {
        rdh::save_image_file(to_image(arr), path);
      },
      py::arg("image"), py::arg("path"), "Write a (h, w) uint8 array as PGM");

  m.def(
      "psnr",
      [](const py::array_t<std::uint8_t>& a,
         const py::array_t<std::uint8_t>& b) {
        return rdh::psnr(to_image(a), to_image(b));
      },
      py::arg("a"), py::arg("b"), "Peak signal-to-noise ratio in dB");

  m.def(
      "embed",
      [](const py::array_t<std::uint8_t>& cover,
         const py::array_t<std::uint8_t>& payload, const std::string& scheme,
         const std::string& pair, int classes, int hmin, int delta,
         const std::string& objective) {
        const rdh::GrayImage img = to_image(cover);
        const std::vector<std::uint8_t> bits = to_bits(payload);
        rdh::EmbedStats st;
        rdh::GrayImage stego;
        if (scheme == "cpee")
          stego = rdh::embed_cpee(img, bits, &st);
        else if (scheme == "mhm")
          stego = rdh::embed_mhm(
              img, bits, make_config("rhombus", classes, hmin, delta, objective),
              &st);
        else if (scheme == "dpeh")
          stego = rdh::embed(
              img, bits, make_config(pair, classes, hmin, delta, objective),
              &st);
        else
          throw py::value_error("scheme must be cpee, mhm, or dpeh");
        return py::make_tuple(from_image(stego), stats_dict(st));
      },
      py::arg("cover"), py::arg("payload"), py::arg("scheme") = "dpeh",
      py::arg("pair") = "nonlinear", py::arg("classes") = 16,
      py::arg("hmin") = 20, py::arg("delta") = 2000,
      py::arg("objective") = "distortion",
      "Embed payload bits; returns (stego, stats dict)");

  m.def(
      "extract",
      [](const py::array_t<std::uint8_t>& stego) {
        auto [bits, cover] = rdh::extract(to_image(stego));
        return py::make_tuple(from_bits(bits), from_image(cover));
      },
      py::arg("stego"),
      "Recover (payload bits, original cover) from a stego image");
}
