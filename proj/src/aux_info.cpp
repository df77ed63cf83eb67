#include "rdh/aux_info.hpp"

#include <string>

#include "rdh/bitstream.hpp"
#include "rdh/errors.hpp"
#include "rdh/optimizer.hpp"

namespace rdh {

namespace {

constexpr int kSizeBits = 10;
constexpr int kCodecBits = 4;
constexpr int kClassBits = 6;
constexpr int kHminBits = 8;
constexpr int kDeltaBits = 12;
constexpr int kPairBits = 2;
constexpr int kThresholdBits = 16;
constexpr int kNendBits = 20;
constexpr int kFlagLenBits = 12;
constexpr int kSclmBits = 18;
constexpr int kAbscissaBits = 5;
constexpr int kCrcBits = 16;

constexpr int kInterceptSpan = kMaxIntercept - kMinIntercept + 1;

void check(bool ok, const std::string& what, errc code) {
  if (!ok) throw rdh_error(code, what);
}

void write_layer(BitWriter& w, const LayerAux& layer, int m) {
  w.put_uint(layer.n_end, kNendBits);
  w.put_bit(layer.i1_ge_i2 ? 1 : 0);

  std::vector<std::uint8_t> flags(
      static_cast<std::size_t>(m) * kInterceptSpan, 0);
  for (const auto& [line, sides] : layer.bins) {
    const auto [t, b] = line;
    check(t >= 0 && t < m, "bin class index out of range", errc::serialization);
    check(b >= kMinIntercept && b <= kMaxIntercept,
          "bin intercept out of range", errc::serialization);
    const auto [left, right] = sides;
    check(left == kNegInf || (left >= kMinAbscissa && left <= kMaxAbscissa),
          "left abscissa out of range", errc::serialization);
    check(right == kPosInf || (right >= kMinAbscissa && right <= kMaxAbscissa),
          "right abscissa out of range", errc::serialization);
    check(left == kNegInf || right == kPosInf || left < right,
          "expansion bins must be distinct and ordered", errc::serialization);
    flags[static_cast<std::size_t>(t) * kInterceptSpan +
          static_cast<std::size_t>(b - kMinIntercept)] = 1;
  }
  const std::vector<std::uint8_t> rle = rle_encode(flags);
  check(rle.size() < (1u << kFlagLenBits), "flag run-length stream too long",
        errc::serialization);
  w.put_uint(rle.size(), kFlagLenBits);
  for (std::uint8_t byte : rle) w.put_uint(byte, 8);

  for (const auto& [line, sides] : layer.bins) {
    (void)line;
    const auto [left, right] = sides;
    if (left == kNegInf) {
      w.put_bit(0);
    } else {
      w.put_bit(1);
      w.put_uint(static_cast<std::uint64_t>(left - kMinAbscissa),
                 kAbscissaBits);
    }
    if (right == kPosInf) {
      w.put_bit(0);
    } else {
      w.put_bit(1);
      w.put_uint(static_cast<std::uint64_t>(right - kMinAbscissa),
                 kAbscissaBits);
    }
  }

  check(layer.clm_bits.size() < (1u << kSclmBits),
        "compressed location map too long", errc::serialization);
  w.put_uint(layer.clm_bits.size(), kSclmBits);
  w.put_bits(layer.clm_bits);
}

LayerAux read_layer(BitReader& r, int m) {
  LayerAux layer;
  layer.n_end = static_cast<std::uint32_t>(r.get_uint(kNendBits));
  layer.i1_ge_i2 = r.get_bit() != 0;

  const auto rle_len = static_cast<std::size_t>(r.get_uint(kFlagLenBits));
  std::vector<std::uint8_t> rle;
  rle.reserve(rle_len);
  for (std::size_t i = 0; i < rle_len; ++i)
    rle.push_back(static_cast<std::uint8_t>(r.get_uint(8)));
  const std::vector<std::uint8_t> flags =
      rle_decode(rle, static_cast<std::size_t>(m) * kInterceptSpan);

  for (int t = 0; t < m; ++t) {
    for (int b = kMinIntercept; b <= kMaxIntercept; ++b) {
      if (!flags[static_cast<std::size_t>(t) * kInterceptSpan +
                 static_cast<std::size_t>(b - kMinIntercept)])
        continue;
      int left = kNegInf;
      int right = kPosInf;
      if (r.get_bit())
        left = static_cast<int>(r.get_uint(kAbscissaBits)) + kMinAbscissa;
      if (r.get_bit())
        right = static_cast<int>(r.get_uint(kAbscissaBits)) + kMinAbscissa;
      check(left == kNegInf || right == kPosInf || left < right,
            "corrupt expansion bin ordering", errc::corruption);
      layer.bins[{t, b}] = {left, right};
    }
  }

  const auto s_clm = static_cast<std::size_t>(r.get_uint(kSclmBits));
  layer.clm_bits = r.get_bits(s_clm);
  return layer;
}

// Serializes everything between the size field and the CRC.
std::vector<std::uint8_t> body_bits(const AuxInfo& a) {
  check(a.codec_id == 0, "unknown flag-compression codec id",
        errc::serialization);
  check(a.m >= 1 && a.m <= 64, "class count must be in 1..64",
        errc::serialization);
  check(a.hmin >= 0 && a.hmin < (1 << kHminBits), "hmin out of range",
        errc::serialization);
  check(a.delta >= 0 && a.delta < (1 << kDeltaBits), "delta out of range",
        errc::serialization);
  check(static_cast<int>(a.thresholds.s.size()) == a.m - 1,
        "threshold count must be class count - 1", errc::serialization);

  BitWriter w;
  w.put_uint(a.codec_id, kCodecBits);
  w.put_uint(static_cast<std::uint64_t>(a.m - 1), kClassBits);
  w.put_uint(static_cast<std::uint64_t>(a.hmin), kHminBits);
  w.put_uint(static_cast<std::uint64_t>(a.delta), kDeltaBits);
  w.put_uint(static_cast<std::uint64_t>(a.pair), kPairBits);
  for (int s : a.thresholds.s) {
    check(s >= 0 && s < (1 << kThresholdBits), "threshold out of range",
          errc::serialization);
    w.put_uint(static_cast<std::uint64_t>(s), kThresholdBits);
  }
  write_layer(w, a.layers[0], a.m);
  write_layer(w, a.layers[1], a.m);
  return w.take();
}

}  // namespace

std::size_t aux_bit_size(const AuxInfo& a) {
  return kSizeBits + body_bits(a).size() + kCrcBits;
}

std::vector<std::uint8_t> serialize_aux(const AuxInfo& a) {
  const std::vector<std::uint8_t> body = body_bits(a);
  const std::size_t s_aux = kSizeBits + body.size() + kCrcBits;
  check(s_aux < (1u << kSizeBits), "auxiliary data exceeds the 10-bit size field",
        errc::serialization);

  BitWriter w;
  w.put_uint(s_aux, kSizeBits);
  w.put_bits(body);
  w.put_uint(crc16(pack_bits(w.bits())), kCrcBits);
  return w.take();
}

AuxInfo deserialize_aux(const std::vector<std::uint8_t>& bits) {
  check(bits.size() >= kSizeBits, "auxiliary data truncated",
        errc::corruption);
  BitReader r(bits);
  const auto s_aux = static_cast<std::size_t>(r.get_uint(kSizeBits));
  check(s_aux >= kSizeBits + kCrcBits && s_aux <= bits.size(),
        "auxiliary size field inconsistent with available bits",
        errc::corruption);

  const std::vector<std::uint8_t> covered(bits.begin(),
                                          bits.begin() + (s_aux - kCrcBits));
  BitReader crc_reader(bits);
  crc_reader.get_bits(s_aux - kCrcBits);
  const auto stored = static_cast<std::uint16_t>(crc_reader.get_uint(kCrcBits));
  check(crc16(pack_bits(covered)) == stored, "auxiliary checksum mismatch",
        errc::corruption);

  AuxInfo a;
  a.codec_id = static_cast<std::uint8_t>(r.get_uint(kCodecBits));
  check(a.codec_id == 0, "unknown flag-compression codec id",
        errc::corruption);
  a.m = static_cast<int>(r.get_uint(kClassBits)) + 1;
  a.hmin = static_cast<int>(r.get_uint(kHminBits));
  a.delta = static_cast<int>(r.get_uint(kDeltaBits));
  a.pair = static_cast<PredictorPair>(r.get_uint(kPairBits));
  a.thresholds.s.clear();
  for (int i = 0; i + 1 < a.m; ++i) {
    a.thresholds.s.push_back(static_cast<int>(r.get_uint(kThresholdBits)));
    if (i > 0)
      check(a.thresholds.s[i - 1] <= a.thresholds.s[i],
            "complexity thresholds not monotone", errc::corruption);
  }
  a.layers[0] = read_layer(r, a.m);
  a.layers[1] = read_layer(r, a.m);
  check(r.position() == s_aux - kCrcBits,
        "auxiliary structure length mismatch at bit " +
            std::to_string(r.position()),
        errc::corruption);
  return a;
}

}  // namespace rdh
