#include "rdh/bitstream.hpp"

#include <string>

#include "rdh/errors.hpp"

namespace rdh {

void BitWriter::put_bit(int bit) {
  bits_.push_back(static_cast<std::uint8_t>(bit & 1));
  ++bit_count_;
}

void BitWriter::put_uint(std::uint64_t value, int width) {
  if (width < 0 || width > 64)
    throw rdh_error(errc::serialization, "field width out of range");
  if (width < 64 && (value >> width) != 0)
    throw rdh_error(errc::serialization,
                    "value " + std::to_string(value) + " does not fit in " +
                        std::to_string(width) + " bits");
  for (int i = width - 1; i >= 0; --i) put_bit(static_cast<int>(value >> i));
}

void BitWriter::put_bits(const std::vector<std::uint8_t>& bits) {
  for (auto b : bits) put_bit(b);
}

int BitReader::get_bit() {
  if (pos_ >= bits_.size())
    throw rdh_error(errc::corruption,
                    "bitstream underrun at bit " + std::to_string(pos_));
  return bits_[pos_++];
}

std::uint64_t BitReader::get_uint(int width) {
  std::uint64_t value = 0;
  for (int i = 0; i < width; ++i) value = (value << 1) | get_bit();
  return value;
}

std::vector<std::uint8_t> BitReader::get_bits(std::size_t count) {
  std::vector<std::uint8_t> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(static_cast<std::uint8_t>(get_bit()));
  return out;
}

std::vector<std::uint8_t> pack_bits(const std::vector<std::uint8_t>& bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) bytes[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  return bytes;
}

std::vector<std::uint8_t> unpack_bits(const std::vector<std::uint8_t>& bytes,
                                      std::size_t bit_count) {
  if (bytes.size() * 8 < bit_count)
    throw rdh_error(errc::corruption, "byte buffer shorter than requested bits");
  std::vector<std::uint8_t> bits(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i)
    bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1;
  return bits;
}

std::vector<std::uint8_t> rle_encode(const std::vector<std::uint8_t>& bits) {
  std::vector<std::uint8_t> out;
  std::size_t i = 0;
  while (i < bits.size()) {
    const std::uint8_t value = bits[i];
    std::size_t run = 1;
    while (i + run < bits.size() && bits[i + run] == value && run < 65535) ++run;
    if (run <= 127) {
      out.push_back(static_cast<std::uint8_t>((value << 7) | run));
    } else {
      out.push_back(static_cast<std::uint8_t>(value << 7));  // escape token
      out.push_back(static_cast<std::uint8_t>(run >> 8));
      out.push_back(static_cast<std::uint8_t>(run & 0xFF));
    }
    i += run;
  }
  return out;
}

std::vector<std::uint8_t> rle_decode(const std::vector<std::uint8_t>& bytes,
                                     std::size_t bit_count) {
  std::vector<std::uint8_t> bits;
  bits.reserve(bit_count);
  std::size_t i = 0;
  while (bits.size() < bit_count) {
    if (i >= bytes.size())
      throw rdh_error(errc::corruption, "RLE stream ended before all bits decoded");
    const std::uint8_t token = bytes[i++];
    const std::uint8_t value = token >> 7;
    std::size_t run = token & 0x7F;
    if (run == 0) {
      if (i + 2 > bytes.size())
        throw rdh_error(errc::corruption, "truncated RLE escape token");
      run = (static_cast<std::size_t>(bytes[i]) << 8) | bytes[i + 1];
      i += 2;
      if (run == 0) throw rdh_error(errc::corruption, "zero-length RLE escape run");
    }
    if (bits.size() + run > bit_count)
      throw rdh_error(errc::corruption, "RLE run overflows declared bit count");
    bits.insert(bits.end(), run, value);
  }
  if (i != bytes.size())
    throw rdh_error(errc::corruption, "trailing bytes after RLE payload");
  return bits;
}

std::uint16_t crc16(const std::vector<std::uint8_t>& bytes) {
  std::uint16_t crc = 0xFFFF;
  for (auto b : bytes) {
    crc ^= static_cast<std::uint16_t>(b) << 8;
    for (int i = 0; i < 8; ++i)
      crc = (crc & 0x8000) ? static_cast<std::uint16_t>((crc << 1) ^ 0x1021)
                           : static_cast<std::uint16_t>(crc << 1);
  }
  return crc;
}

}  // namespace rdh
