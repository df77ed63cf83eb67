#ifndef RDH_AUX_INFO_HPP
#define RDH_AUX_INFO_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "rdh/histograms.hpp"
#include "rdh/predictors.hpp"

namespace rdh {

// Side information of one embedding layer.
struct LayerAux {
  // 1-based index of the layer cell that consumed the last embedded bit;
  // 0 means the layer carries nothing. Cells beyond it are untouched.
  std::uint32_t n_end = 0;

  // Edge-intensity ordering (I1 >= I2) captured at the start of this
  // layer's pass; the decoder reads it here instead of recomputing the
  // intensities from an image state it no longer has.
  bool i1_ge_i2 = true;

  // Expansion bins of every active line, keyed (t, b). Sentinel sides use
  // the optimizer's +-inf values. Lines absent here are left untouched.
  std::map<std::pair<int, int>, std::pair<int, int>> bins;

  // Variable-length tail of the layer block. The first layer carries the
  // compressed location map here (the map covers the whole image); the
  // second layer carries zero padding that keeps the total size consistent
  // with the reserved-row count the decoder infers from it.
  std::vector<std::uint8_t> clm_bits;

  bool operator==(const LayerAux&) const = default;
};

// Everything the decoder needs, serialized into the reserved rows' LSBs.
//
// Bit layout (MSB-first):
//   [s_aux:10][codec_id:4][m-1:6][hmin:8][delta:12][pair:2]
//   [thresholds: (m-1) x 16][layer-1 block][layer-2 block][crc:16]
// layer block:
//   [n_end:20][i1_ge_i2:1][flag-RLE byte count:12][flag-RLE bytes]
//   [bin parameters of flagged lines, (t asc, b asc)][tail length:18][tail]
// where the tail holds the compressed location map (first layer) or zero
// padding (second layer).
// bin parameters per flagged line:
//   [left finite?:1][left+14:5 when finite][right finite?:1][right+14:5]
// The flag grid covers intercepts -15..15 for each of the m classes; a
// flag of 1 marks a line with at least one finite expansion side. The CRC
// (16-bit CCITT) covers all preceding bits packed into bytes.
struct AuxInfo {
  std::uint8_t codec_id = 0;  // flag-compression codec id; 0 = RLE
  int m = 16;                 // complexity class count, 1..64
  int hmin = 20;              // valid-line mass threshold
  int delta = 2000;           // DP capacity margin
  PredictorPair pair = PredictorPair::rhombus_nonlinear;
  Thresholds thresholds;      // m-1 values
  LayerAux layers[2];         // first, second

  bool operator==(const AuxInfo&) const = default;
};

// Total serialized size in bits of `a`, including the leading 10-bit size
// field and the trailing CRC.
std::size_t aux_bit_size(const AuxInfo& a);

// Serializes to a bit vector whose length equals the embedded 10-bit s_aux
// field. Field-width violations raise errc::serialization.
std::vector<std::uint8_t> serialize_aux(const AuxInfo& a);

// Parses and validates (CRC, structure) the first s_aux bits of `bits`.
// Mismatches raise errc::corruption.
AuxInfo deserialize_aux(const std::vector<std::uint8_t>& bits);

}  // namespace rdh

#endif  // RDH_AUX_INFO_HPP
