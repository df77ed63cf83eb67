#ifndef RDH_CODEC_HPP
#define RDH_CODEC_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "rdh/aux_info.hpp"
#include "rdh/image.hpp"
#include "rdh/optimizer.hpp"
#include "rdh/predictors.hpp"

namespace rdh {

// Encoder parameters. All of them are serialized into the stego image's
// auxiliary data, so extraction needs no configuration.
struct EmbedConfig {
  PredictorPair pair = PredictorPair::rhombus_nonlinear;
  int m = 16;       // complexity class count, 1..64
  int hmin = 20;    // minimum line mass to qualify for expansion bins
  int delta = 2000; // DP capacity margin above the target
  Objective objective = Objective::min_total_distortion;
};

// Per-layer planning outcome.
struct LayerReport {
  long long planned_ec = 0;   // plan capacity at the prepass histograms
  long long planned_ed2 = 0;  // plan distortion in half-units
  std::uint32_t n_end = 0;    // last cell that consumed a bit (1-based)
};

struct EmbedStats {
  std::size_t payload_bits = 0;
  std::size_t aux_bits = 0;  // serialized auxiliary size s_aux
  int reserved_rows = 2;
  LayerReport layers[2];
};

// Embeds `payload` (one bit per element, values 0/1) reversibly into
// `cover`: saturation preprocessing, double-layer checkerboard embedding
// driven by the configured predictor pair and optimized expansion bins,
// then auxiliary data into the reserved rows' LSBs. Raises capacity_error
// when the payload cannot be planned and errc::serialization when the
// auxiliary data cannot fit its pinned budget.
GrayImage embed(const GrayImage& cover, const std::vector<std::uint8_t>& payload,
                const EmbedConfig& cfg = {}, EmbedStats* stats = nullptr);

// Inverse of embed for every scheme (the auxiliary data identifies the
// configuration): returns the payload bits and the bit-exact cover.
std::pair<std::vector<std::uint8_t>, GrayImage> extract(const GrayImage& stego);

// Classic fixed-bin baseline: single rhombus predictor, one histogram,
// expansion bins pinned at (-1, 0), every cell participates.
GrayImage embed_cpee(const GrayImage& cover,
                     const std::vector<std::uint8_t>& payload,
                     EmbedStats* stats = nullptr);
std::pair<std::vector<std::uint8_t>, GrayImage> extract_cpee(
    const GrayImage& stego);

// Multi-histogram baseline: identical predictors collapse every 2D
// histogram onto the b = 0 line, reducing the machinery to per-class 1D
// histograms with optimized bins.
GrayImage embed_mhm(const GrayImage& cover,
                    const std::vector<std::uint8_t>& payload,
                    const EmbedConfig& cfg = {}, EmbedStats* stats = nullptr);
std::pair<std::vector<std::uint8_t>, GrayImage> extract_mhm(
    const GrayImage& stego);

}  // namespace rdh

#endif  // RDH_CODEC_HPP
