#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxleak/errors.hpp"

namespace maxleak {

/// A sequence of bits. Kept unpacked (one byte per bit) since everything at
/// audit scale is tiny; packing only happens at the file boundary.
class Bitstring {
public:
  Bitstring() = default;
  explicit Bitstring(std::vector<uint8_t> bits) : bits_(std::move(bits)) {}

  static Bitstring from_string(std::string_view s);

  size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  uint8_t operator[](size_t i) const { return bits_[i]; }
  void set(size_t i, uint8_t b) { bits_[i] = b & 1; }
  void push_back(uint8_t b) { bits_.push_back(b & 1); }
  void append(const Bitstring& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
  }
  Bitstring prefix(size_t len) const {
    return Bitstring({bits_.begin(), bits_.begin() + len});
  }

  std::string to_string() const;

  // MSB-first byte packing, zero-padded to a byte boundary.
  std::vector<uint8_t> packed() const;
  static Bitstring from_packed(std::span<const uint8_t> bytes, size_t nbits);

  friend bool operator==(const Bitstring&, const Bitstring&) = default;
  friend std::strong_ordering operator<=>(const Bitstring&,
                                          const Bitstring&) = default;

private:
  std::vector<uint8_t> bits_;
};

struct BitWriter {
  Bitstring out;

  void put(uint8_t b) { out.push_back(b); }
  // Writes `width` bits of `v`, most significant first.
  void put_uint(uint64_t v, unsigned width);
};

class BitReader {
public:
  explicit BitReader(const Bitstring& src) : src_(src) {}

  uint8_t get();
  uint64_t get_uint(unsigned width);
  size_t position() const { return pos_; }
  size_t remaining() const { return src_.size() - pos_; }

private:
  const Bitstring& src_;
  size_t pos_ = 0;
};

}  // namespace maxleak
