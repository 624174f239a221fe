#include "maxleak/scheme.hpp"

#include <cmath>

#include "maxleak/lz78.hpp"

namespace maxleak::scheme {

Rational Rational::parse(const std::string& s) {
  Rational r;
  size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      r.num = std::stoull(s);
      r.den = 1;
    } else {
      r.num = std::stoull(s.substr(0, slash));
      r.den = std::stoull(s.substr(slash + 1));
    }
  } catch (const std::exception&) {
    fail(Errc::malformed_header, "rational must be \"p\" or \"p/q\": " + s);
  }
  if (r.den == 0) fail(Errc::malformed_header, "rational denominator is zero");
  return r;
}

std::string Rational::to_string() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

uint64_t Rational::floor_times(uint64_t n) const {
  if (num != 0 && n > UINT64_MAX / num) {
    fail(Errc::budget_exceeded, "n * lambda overflows");
  }
  return n * num / den;
}

KeySource KeySource::from_bytes(std::vector<uint8_t> material) {
  KeySource k;
  k.seeded_mode_ = false;
  k.material_ = std::move(material);
  return k;
}

KeySource KeySource::seeded(uint64_t seed) {
  KeySource k;
  k.seeded_mode_ = true;
  k.prng_.seed(seed);
  return k;
}

uint8_t KeySource::next_bit() {
  if (seeded_mode_) {
    if (buffered_ == 0) {
      buffer_ = prng_();
      buffered_ = 64;
    }
    --buffered_;
    ++consumed_;
    return (buffer_ >> buffered_) & 1;
  }
  uint64_t byte = consumed_ / 8;
  if (byte >= material_.size()) {
    fail(Errc::key_exhausted,
         "key file exhausted after " + std::to_string(consumed_) + " bits");
  }
  uint8_t bit = (material_[byte] >> (7 - consumed_ % 8)) & 1;
  ++consumed_;
  return bit;
}

Bitstring KeySource::take(uint64_t count) {
  Bitstring b;
  for (uint64_t i = 0; i < count; ++i) b.push_back(next_bit());
  return b;
}

uint64_t max_body_bits(size_t n, uint32_t alpha) {
  return lz78::raw_bit_count(n, alpha) + 1;
}

Bitstring codeword(const Sequence& x, const SchemeConfig& cfg) {
  Bitstring body = cfg.compressor == Compressor::raw
                       ? lz78::raw_encode_body(x)
                       : lz78::capped_encode_body(x);
  if (cfg.pad_to_max) {
    uint64_t target = cfg.compressor == Compressor::raw
                          ? lz78::raw_bit_count(x.size(), x.alpha)
                          : max_body_bits(x.size(), x.alpha);
    while (body.size() < target) body.push_back(0);
  }
  return body;
}

uint64_t encrypted_prefix(uint64_t body_len, size_t n, Rational lambda) {
  uint64_t allowance = lambda.floor_times(n);
  return body_len > allowance ? body_len - allowance : 0;
}

EncryptResult encrypt(const Sequence& x, const SchemeConfig& cfg,
                      KeySource& key) {
  x.validate();
  if (x.symbols.empty()) fail(Errc::bad_sequence, "cannot encrypt an empty sequence");
  if (x.alpha != cfg.alpha) fail(Errc::bad_sequence, "sequence alphabet != config alphabet");
  Bitstring body = codeword(x, cfg);
  uint64_t m = encrypted_prefix(body.size(), x.size(), cfg.lambda);
  EncryptResult r;
  r.pad_bits = m;
  r.ciphertext = body;
  for (uint64_t i = 0; i < m; ++i) {
    r.ciphertext.set(i, body[i] ^ key.next_bit());
  }
  return r;
}

Sequence decrypt(const Bitstring& ciphertext, size_t n,
                 const SchemeConfig& cfg, KeySource& key) {
  uint64_t m = encrypted_prefix(ciphertext.size(), n, cfg.lambda);
  Bitstring body = ciphertext;
  for (uint64_t i = 0; i < m; ++i) {
    body.set(i, ciphertext[i] ^ key.next_bit());
  }
  if (cfg.compressor == Compressor::raw) {
    BitReader r(body);
    return lz78::raw_decode_body(r, cfg.alpha, n);
  }
  return lz78::capped_decode_body(body, cfg.alpha, n);
}

double leakage_upper_bound(size_t n, Rational lambda, uint64_t l_max) {
  if (l_max < 1) fail(Errc::bad_channel, "L_max must be >= 1");
  return double(n) * lambda.to_double() + std::log2(double(l_max));
}

double key_rate(const Sequence& x, const SchemeConfig& cfg) {
  Bitstring body = codeword(x, cfg);
  return double(encrypted_prefix(body.size(), x.size(), cfg.lambda)) /
         double(x.size());
}

namespace {

void put_be64(std::vector<uint8_t>& out, uint64_t v) {
  for (int i = 7; i >= 0; --i) out.push_back(uint8_t(v >> (8 * i)));
}

uint64_t get_be64(std::span<const uint8_t> in, size_t at) {
  uint64_t v = 0;
  for (size_t i = 0; i < 8; ++i) v = (v << 8) | in[at + i];
  return v;
}

}  // namespace

std::vector<uint8_t> to_cipher_file(const EncryptResult& r, size_t n,
                                    const SchemeConfig& cfg) {
  if (cfg.alpha > 255) fail(Errc::bad_sequence, "file format caps alpha at 255");
  std::vector<uint8_t> file;
  file.push_back(kCipherMagic);
  file.push_back(uint8_t(cfg.alpha));
  put_be64(file, n);
  put_be64(file, cfg.lambda.num);
  put_be64(file, cfg.lambda.den);
  put_be64(file, r.pad_bits);
  put_be64(file, r.ciphertext.size());
  uint8_t flags = 0;
  if (cfg.pad_to_max) flags |= 1;
  if (cfg.compressor == Compressor::raw) flags |= 2;
  file.push_back(flags);
  auto packed = r.ciphertext.packed();
  file.insert(file.end(), packed.begin(), packed.end());
  return file;
}

CipherFile from_cipher_file(std::span<const uint8_t> file) {
  constexpr size_t header = 1 + 1 + 8 * 5 + 1;
  if (file.size() < header) fail(Errc::malformed_header, "cipher file shorter than header");
  if (file[0] != kCipherMagic) fail(Errc::malformed_header, "bad magic byte");
  CipherFile cf;
  cf.cfg.alpha = file[1];
  if (cf.cfg.alpha < 2) fail(Errc::malformed_header, "alphabet size must be >= 2");
  cf.n = get_be64(file, 2);
  cf.cfg.lambda.num = get_be64(file, 10);
  cf.cfg.lambda.den = get_be64(file, 18);
  if (cf.cfg.lambda.den == 0) fail(Errc::malformed_header, "lambda denominator is zero");
  cf.pad_bits = get_be64(file, 26);
  uint64_t body_bits = get_be64(file, 34);
  uint8_t flags = file[42];
  cf.cfg.pad_to_max = flags & 1;
  cf.cfg.compressor = (flags & 2) ? Compressor::raw : Compressor::capped_lz78;
  cf.body = Bitstring::from_packed(file.subspan(header), body_bits);
  uint64_t expect = encrypted_prefix(body_bits, cf.n, cf.cfg.lambda);
  if (expect != cf.pad_bits) {
    fail(Errc::malformed_header, "stored pad-bit count disagrees with header");
  }
  return cf;
}

}  // namespace maxleak::scheme
