#ifndef RDH_BITSTREAM_HPP
#define RDH_BITSTREAM_HPP

#include <cstdint>
#include <vector>

namespace rdh {

// MSB-first bit writer over a growable byte buffer.
class BitWriter {
public:
  void put_bit(int bit);
  // Writes `width` bits of `value`, most significant first. `value` must
  // fit in `width` bits (raises errc::serialization otherwise).
  void put_uint(std::uint64_t value, int width);
  void put_bits(const std::vector<std::uint8_t>& bits);  // one bit per element

  std::size_t bit_count() const { return bit_count_; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::vector<std::uint8_t> take() { return std::move(bits_); }

private:
  std::vector<std::uint8_t> bits_;  // one bit per element, values 0/1
  std::size_t bit_count_ = 0;
};

// MSB-first reader over a bit vector; raises errc::corruption with the bit
// offset when a read runs past the end. Owns its buffer so it can be handed
// a temporary safely.
class BitReader {
public:
  explicit BitReader(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  int get_bit();
  std::uint64_t get_uint(int width);
  std::vector<std::uint8_t> get_bits(std::size_t count);

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bits_.size() - pos_; }

private:
  std::vector<std::uint8_t> bits_;
  std::size_t pos_ = 0;
};

// Packs a bit vector into bytes, MSB first, zero-padding the final byte.
std::vector<std::uint8_t> pack_bits(const std::vector<std::uint8_t>& bits);
// Unpacks `bit_count` bits from packed bytes.
std::vector<std::uint8_t> unpack_bits(const std::vector<std::uint8_t>& bytes,
                                      std::size_t bit_count);

// Run-length codec for bitmaps. Token byte = [bit value:1][run length:7]
// with length 1..127; length 0 escapes to a 2-byte big-endian run length
// (1..65535) of the same bit value. An empty bitmap encodes to zero bytes.
std::vector<std::uint8_t> rle_encode(const std::vector<std::uint8_t>& bits);
// Decodes exactly `bit_count` bits; raises errc::corruption on malformed
// input or a length mismatch.
std::vector<std::uint8_t> rle_decode(const std::vector<std::uint8_t>& bytes,
                                     std::size_t bit_count);

// CRC-16/CCITT-FALSE (poly 0x1021, init 0xFFFF) over a byte sequence.
std::uint16_t crc16(const std::vector<std::uint8_t>& bytes);

}  // namespace rdh

#endif  // RDH_BITSTREAM_HPP
