#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "maxleak/errors.hpp"

namespace maxleak {

/// An individual plaintext over {0..alpha-1}.
struct Sequence {
  std::vector<uint32_t> symbols;
  uint32_t alpha = 2;

  size_t size() const { return symbols.size(); }
  void validate() const;

  /// 'a'..'z' map to 0..25; '0'..'9' map to their digit value.
  static Sequence from_letters(std::string_view s, uint32_t alpha);
  std::string to_letters() const;

  /// The sequence whose base-alpha digits (most significant first) encode
  /// `index`. Inverse of to_index(). Used to sweep {0..alpha-1}^n.
  static Sequence from_index(uint64_t index, size_t n, uint32_t alpha);
  uint64_t to_index() const;

  friend bool operator==(const Sequence&, const Sequence&) = default;
};

/// alpha^n, guarded against 64-bit overflow.
uint64_t pow_u64(uint64_t base, uint32_t exp);

}  // namespace maxleak
