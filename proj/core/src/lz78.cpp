#include "maxleak/lz78.hpp"

#include <gmpxx.h>

#include <bit>
#include <cmath>
#include <unordered_map>

namespace maxleak::lz78 {

namespace {

unsigned pointer_width(uint64_t j) {
  // ceil(log2 j) for j >= 1.
  return unsigned(std::bit_width(j - 1));
}

unsigned symbol_width(uint32_t alpha) {
  return unsigned(std::bit_width(uint64_t(alpha - 1)));
}

uint64_t trie_key(uint32_t node, uint32_t symbol) {
  return (uint64_t(node) << 32) | symbol;
}

}  // namespace

PhraseParse parse(const Sequence& x) {
  x.validate();
  if (x.symbols.empty()) fail(Errc::bad_sequence, "cannot parse an empty sequence");

  // node id = phrase id; node 0 is the empty root
  std::unordered_map<uint64_t, uint32_t> children;
  std::vector<size_t> node_length{0};

  PhraseParse out;
  uint32_t node = 0;
  size_t phrase_start = 0;
  for (size_t i = 0; i < x.symbols.size(); ++i) {
    uint32_t sym = x.symbols[i];
    auto it = children.find(trie_key(node, sym));
    if (it != children.end()) {
      node = it->second;
      continue;
    }
    uint32_t fresh = uint32_t(node_length.size());
    children.emplace(trie_key(node, sym), fresh);
    node_length.push_back(node_length[node] + 1);
    out.phrases.push_back(
        {phrase_start, i - phrase_start + 1, node, sym});
    phrase_start = i + 1;
    node = 0;
  }
  if (node != 0) {
    // input ended mid-walk: the tail equals phrase `node` verbatim
    out.phrases.push_back(
        {phrase_start, x.symbols.size() - phrase_start, node, std::nullopt});
    out.last_incomplete = true;
  }
  out.phrase_count = out.phrases.size();
  return out;
}

double lz_complexity(const Sequence& x) {
  auto c = double(parse(x).phrase_count);
  return c * std::log2(c) / double(x.size());
}

double code_length_bound(uint64_t c, uint32_t alpha) {
  return double(c + 1) * std::log2(2.0 * double(alpha) * double(c + 1));
}

Bitstring encode_body(const Sequence& x) {
  PhraseParse p = parse(x);
  unsigned sw = symbol_width(x.alpha);
  BitWriter w;
  for (size_t j = 1; j <= p.phrases.size(); ++j) {
    const Phrase& ph = p.phrases[j - 1];
    w.put_uint(ph.parent, pointer_width(j));
    if (ph.symbol) w.put_uint(*ph.symbol, sw);
  }
  return std::move(w.out);
}

Sequence decode_body(const Bitstring& body, uint32_t alpha, size_t n) {
  if (alpha < 2) fail(Errc::malformed_header, "alphabet size must be >= 2");
  if (n == 0) fail(Errc::malformed_header, "sequence length must be >= 1");
  BitReader r(body);
  unsigned sw = symbol_width(alpha);

  Sequence x;
  x.alpha = alpha;
  x.symbols.reserve(n);
  // phrase j's string = string of phrase_start[j] .. via (parent, symbol)
  std::vector<uint32_t> parent{0};
  std::vector<uint32_t> symbol{0};
  std::vector<size_t> length{0};

  auto append_phrase = [&](uint32_t id) {
    size_t at = x.symbols.size();
    x.symbols.resize(at + length[id]);
    for (size_t k = length[id]; k-- > 0;) {
      x.symbols[at + k] = symbol[id];
      id = parent[id];
    }
  };

  for (uint64_t j = 1; x.symbols.size() < n; ++j) {
    uint64_t ptr = r.get_uint(pointer_width(j));
    if (ptr >= j) {
      fail(Errc::pointer_out_of_range,
           "phrase " + std::to_string(j) + " points to " + std::to_string(ptr));
    }
    size_t rem = n - x.symbols.size();
    size_t plen = length[ptr];
    if (rem > plen) {
      uint64_t sym = r.get_uint(sw);
      if (sym >= alpha) {
        fail(Errc::pointer_out_of_range,
             "symbol " + std::to_string(sym) + " outside alphabet");
      }
      parent.push_back(uint32_t(ptr));
      symbol.push_back(uint32_t(sym));
      length.push_back(plen + 1);
      append_phrase(uint32_t(parent.size() - 1));
    } else if (rem == plen && plen > 0) {
      append_phrase(uint32_t(ptr));  // incomplete final phrase
    } else {
      fail(Errc::pointer_out_of_range,
           "phrase " + std::to_string(j) + " does not fit remaining length");
    }
  }
  return x;
}

uint64_t raw_bit_count(size_t n, uint32_t alpha) {
  // ceil(log2(alpha^n)) = bit width of alpha^n - 1, exactly
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), alpha, n);
  total -= 1;
  return mpz_sizeinbase(total.get_mpz_t(), 2);
}

Bitstring raw_encode_body(const Sequence& x) {
  mpz_class v = 0;
  for (uint32_t s : x.symbols) v = v * x.alpha + s;
  uint64_t width = raw_bit_count(x.size(), x.alpha);
  BitWriter w;
  for (uint64_t i = width; i-- > 0;) {
    w.put(mpz_tstbit(v.get_mpz_t(), i));
  }
  return std::move(w.out);
}

Sequence raw_decode_body(BitReader& reader, uint32_t alpha, size_t n) {
  uint64_t width = raw_bit_count(n, alpha);
  mpz_class v = 0;
  for (uint64_t i = 0; i < width; ++i) {
    v <<= 1;
    if (reader.get()) v |= 1;
  }
  Sequence x;
  x.alpha = alpha;
  x.symbols.assign(n, 0);
  for (size_t i = n; i-- > 0;) {
    mpz_class digit = v % alpha;
    x.symbols[i] = uint32_t(digit.get_ui());
    v /= alpha;
  }
  if (v != 0) fail(Errc::pointer_out_of_range, "raw body exceeds alpha^n");
  return x;
}

Bitstring capped_encode_body(const Sequence& x) {
  x.validate();
  if (x.symbols.empty()) fail(Errc::bad_sequence, "cannot encode an empty sequence");
  Bitstring lz = encode_body(x);
  Bitstring out;
  if (lz.size() < raw_bit_count(x.size(), x.alpha)) {
    out.push_back(0);
    out.append(lz);
  } else {
    out.push_back(1);
    out.append(raw_encode_body(x));
  }
  return out;
}

Sequence capped_decode_body(const Bitstring& body, uint32_t alpha, size_t n) {
  if (body.empty()) fail(Errc::truncated, "capped body is missing its flag bit");
  BitReader r(body);
  if (r.get() == 0) {
    Bitstring rest;
    for (size_t i = 1; i < body.size(); ++i) rest.push_back(body[i]);
    return decode_body(rest, alpha, n);
  }
  return raw_decode_body(r, alpha, n);
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

std::vector<uint8_t> compress(const Sequence& x) {
  x.validate();
  if (x.symbols.empty()) fail(Errc::bad_sequence, "cannot compress an empty sequence");
  if (x.alpha > 255) fail(Errc::bad_sequence, "file format caps alpha at 255");
  std::vector<uint8_t> file;
  file.push_back(kCompressedMagic);
  file.push_back(uint8_t(x.alpha));
  put_be64(file, x.size());
  Bitstring body = encode_body(x);
  auto packed = body.packed();
  file.insert(file.end(), packed.begin(), packed.end());
  return file;
}

Sequence decompress(std::span<const uint8_t> file) {
  if (file.size() < 10) fail(Errc::malformed_header, "compressed file shorter than header");
  if (file[0] != kCompressedMagic) fail(Errc::malformed_header, "bad magic byte");
  uint32_t alpha = file[1];
  if (alpha < 2) fail(Errc::malformed_header, "alphabet size must be >= 2");
  uint64_t n = get_be64(file, 2);
  if (n == 0) fail(Errc::malformed_header, "sequence length must be >= 1");
  Bitstring body =
      Bitstring::from_packed(file.subspan(10), (file.size() - 10) * 8);
  return decode_body(body, alpha, n);
}

}  // namespace maxleak::lz78
