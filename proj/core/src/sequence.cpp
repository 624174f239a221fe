#include "maxleak/sequence.hpp"

namespace maxleak {

void Sequence::validate() const {
  if (alpha < 2) fail(Errc::bad_sequence, "alphabet size must be >= 2");
  for (uint32_t s : symbols) {
    if (s >= alpha) {
      fail(Errc::bad_sequence, "symbol " + std::to_string(s) +
                                   " out of alphabet of size " +
                                   std::to_string(alpha));
    }
  }
}

Sequence Sequence::from_letters(std::string_view s, uint32_t alpha) {
  Sequence x;
  x.alpha = alpha;
  x.symbols.reserve(s.size());
  for (char c : s) {
    uint32_t v;
    if (c >= 'a' && c <= 'z') v = uint32_t(c - 'a');
    else if (c >= '0' && c <= '9') v = uint32_t(c - '0');
    else fail(Errc::bad_sequence, std::string("unmappable character '") + c + "'");
    x.symbols.push_back(v);
  }
  x.validate();
  return x;
}

std::string Sequence::to_letters() const {
  std::string s;
  s.reserve(symbols.size());
  for (uint32_t v : symbols) {
    if (alpha <= 26 && v < 26) s.push_back(char('a' + v));
    else s.push_back(char('0' + v % 10));
  }
  return s;
}

Sequence Sequence::from_index(uint64_t index, size_t n, uint32_t alpha) {
  Sequence x;
  x.alpha = alpha;
  x.symbols.assign(n, 0);
  for (size_t i = n; i-- > 0;) {
    x.symbols[i] = uint32_t(index % alpha);
    index /= alpha;
  }
  return x;
}

uint64_t Sequence::to_index() const {
  uint64_t v = 0;
  for (uint32_t s : symbols) v = v * alpha + s;
  return v;
}

uint64_t pow_u64(uint64_t base, uint32_t exp) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < exp; ++i) {
    if (r > UINT64_MAX / base) fail(Errc::budget_exceeded, "alpha^n overflows 64 bits");
    r *= base;
  }
  return r;
}

}  // namespace maxleak
