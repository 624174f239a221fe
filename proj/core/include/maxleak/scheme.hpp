#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "maxleak/bits.hpp"
#include "maxleak/sequence.hpp"

namespace maxleak::scheme {

/// Exact nonnegative rational, for the allowed leakage rate lambda.
struct Rational {
  uint64_t num = 0;
  uint64_t den = 1;

  static Rational parse(const std::string& s);  // "p" or "p/q"
  std::string to_string() const;
  double to_double() const { return double(num) / double(den); }
  // floor(n * num / den) without floating point
  uint64_t floor_times(uint64_t n) const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

enum class Compressor { capped_lz78, raw };

struct SchemeConfig {
  Rational lambda;
  uint32_t alpha = 2;
  Compressor compressor = Compressor::capped_lz78;
  /// Pad every codeword to the worst-case cap before the pad, so ciphertext
  /// length itself carries nothing; off by default.
  bool pad_to_max = false;
};

/// Uniform key bits, either from a byte buffer (consumed MSB-first, errors
/// on exhaustion) or from a seeded PRNG (unlimited).
class KeySource {
public:
  static KeySource from_bytes(std::vector<uint8_t> material);
  static KeySource seeded(uint64_t seed);

  uint8_t next_bit();
  Bitstring take(uint64_t count);
  uint64_t consumed() const { return consumed_; }

private:
  KeySource() = default;
  bool seeded_mode_ = false;
  std::vector<uint8_t> material_;
  std::mt19937_64 prng_;
  uint64_t buffer_ = 0;
  unsigned buffered_ = 0;
  uint64_t consumed_ = 0;
};

/// Codeword before encryption: capped LZ78 body, or the raw fixed-length
/// representation; zero-padded to the cap when cfg.pad_to_max.
Bitstring codeword(const Sequence& x, const SchemeConfig& cfg);

/// ceil(n log2 alpha) + 1, the worst-case capped body length.
uint64_t max_body_bits(size_t n, uint32_t alpha);

/// Number of one-time-pad bits: m = max(0, L - floor(n*lambda)).
uint64_t encrypted_prefix(uint64_t body_len, size_t n, Rational lambda);

struct EncryptResult {
  Bitstring ciphertext;
  uint64_t pad_bits = 0;  // m, key bits consumed
};

/// One-time pad on the first m codeword bits; the rest go out in the clear.
EncryptResult encrypt(const Sequence& x, const SchemeConfig& cfg,
                      KeySource& key);
Sequence decrypt(const Bitstring& ciphertext, size_t n,
                 const SchemeConfig& cfg, KeySource& key);

/// n*lambda + log2(L_max), the achievability ceiling on the leakage.
double leakage_upper_bound(size_t n, Rational lambda, uint64_t l_max);

/// m/n for x under cfg.
double key_rate(const Sequence& x, const SchemeConfig& cfg);

// Ciphertext-file layout: magic 0x4D; alpha byte; 8-byte big-endian n,
// lambda numerator, lambda denominator, m, body bit count; a flags byte
// (bit0 pad_to_max, bit1 raw compressor); body bits packed MSB-first.
inline constexpr uint8_t kCipherMagic = 0x4D;

struct CipherFile {
  SchemeConfig cfg;
  size_t n = 0;
  uint64_t pad_bits = 0;
  Bitstring body;
};

std::vector<uint8_t> to_cipher_file(const EncryptResult& r, size_t n,
                                    const SchemeConfig& cfg);
CipherFile from_cipher_file(std::span<const uint8_t> file);

}  // namespace maxleak::scheme
