#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxleak/bits.hpp"
#include "maxleak/sequence.hpp"

namespace maxleak::lz78 {

/// One phrase of the incremental parse. Phrase ids are 1-based; parent 0 is
/// the empty root. The final phrase may be incomplete, in which case it has
/// no fresh symbol and equals the parent phrase verbatim.
struct Phrase {
  size_t start = 0;
  size_t length = 0;
  uint32_t parent = 0;
  std::optional<uint32_t> symbol;
};

struct PhraseParse {
  std::vector<Phrase> phrases;
  size_t phrase_count = 0;  // c(x^n), final phrase included
  bool last_incomplete = false;
};

/// Incremental parse: each phrase is the shortest substring not previously
/// seen as a complete phrase, except possibly the final one.
PhraseParse parse(const Sequence& x);

/// rho_LZ(x^n) = c log2(c) / n.
double lz_complexity(const Sequence& x);

/// (c+1) * log2(2*alpha*(c+1)) — the code-length ceiling the body must obey.
double code_length_bound(uint64_t c, uint32_t alpha);

/// Codeword body. Phrase j is written as a ceil(log2 j)-bit parent pointer
/// followed by a ceil(log2 alpha)-bit fresh symbol; an incomplete final
/// phrase is pointer-only (the decoder stops once n symbols are out).
Bitstring encode_body(const Sequence& x);
Sequence decode_body(const Bitstring& body, uint32_t alpha, size_t n);

/// ceil(n * log2(alpha)) computed exactly.
uint64_t raw_bit_count(size_t n, uint32_t alpha);

/// Raw fallback: x as an n-digit base-alpha number in raw_bit_count bits.
Bitstring raw_encode_body(const Sequence& x);
Sequence raw_decode_body(BitReader& reader, uint32_t alpha, size_t n);

/// Flag bit 0 + LZ body when it beats the raw representation (strictly),
/// else flag bit 1 + raw body. Total length min{L, ceil(n log2 alpha)} + 1.
Bitstring capped_encode_body(const Sequence& x);
Sequence capped_decode_body(const Bitstring& body, uint32_t alpha, size_t n);

// Compressed-file layout: magic 0x4C, 1 byte alpha, 8-byte big-endian n,
// body bits packed MSB-first and zero-padded to a byte boundary.
inline constexpr uint8_t kCompressedMagic = 0x4C;

std::vector<uint8_t> compress(const Sequence& x);
Sequence decompress(std::span<const uint8_t> file);

}  // namespace maxleak::lz78
