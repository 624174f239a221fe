#include "maxleak/bits.hpp"

namespace maxleak {

Bitstring Bitstring::from_string(std::string_view s) {
  Bitstring b;
  for (char c : s) {
    if (c != '0' && c != '1') fail(Errc::bad_sequence, "bitstring chars must be 0/1");
    b.push_back(c == '1');
  }
  return b;
}

std::string Bitstring::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (uint8_t b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<uint8_t> Bitstring::packed() const {
  std::vector<uint8_t> bytes((bits_.size() + 7) / 8, 0);
  for (size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) bytes[i / 8] |= uint8_t(1u << (7 - i % 8));
  }
  return bytes;
}

Bitstring Bitstring::from_packed(std::span<const uint8_t> bytes, size_t nbits) {
  if (bytes.size() * 8 < nbits) fail(Errc::truncated, "packed buffer shorter than bit count");
  Bitstring b;
  b.bits_.reserve(nbits);
  for (size_t i = 0; i < nbits; ++i) {
    b.bits_.push_back((bytes[i / 8] >> (7 - i % 8)) & 1);
  }
  return b;
}

void BitWriter::put_uint(uint64_t v, unsigned width) {
  for (unsigned i = width; i-- > 0;) out.push_back((v >> i) & 1);
}

uint8_t BitReader::get() {
  if (pos_ >= src_.size()) fail(Errc::truncated, "bit read past end of body");
  return src_[pos_++];
}

uint64_t BitReader::get_uint(unsigned width) {
  uint64_t v = 0;
  for (unsigned i = 0; i < width; ++i) v = (v << 1) | get();
  return v;
}

}  // namespace maxleak
