#include <doctest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "maxleak/lz78.hpp"

using namespace maxleak;

namespace {

// Independent oracle: walk the definition directly. Each phrase is the
// shortest substring not previously emitted as a complete phrase; if the
// input ends first, the tail is an incomplete phrase.
std::vector<std::string> brute_parse(const std::string& s) {
  std::set<std::string> seen;
  std::vector<std::string> phrases;
  size_t i = 0;
  while (i < s.size()) {
    size_t len = 1;
    while (i + len <= s.size() && seen.count(s.substr(i, len))) ++len;
    if (i + len <= s.size()) {
      phrases.push_back(s.substr(i, len));
      seen.insert(phrases.back());
      i += len;
    } else {
      phrases.push_back(s.substr(i));
      i = s.size();
    }
  }
  return phrases;
}

std::vector<std::string> phrase_strings(const Sequence& x) {
  auto parse = lz78::parse(x);
  std::vector<std::string> out;
  for (const auto& ph : parse.phrases) {
    Sequence sub;
    sub.alpha = x.alpha;
    sub.symbols.assign(x.symbols.begin() + ph.start,
                       x.symbols.begin() + ph.start + ph.length);
    out.push_back(sub.to_letters());
  }
  return out;
}

void check_parse_invariants(const Sequence& x) {
  auto parse = lz78::parse(x);
  REQUIRE(parse.phrase_count == parse.phrases.size());
  CHECK(parse.phrase_count <= x.size());

  // phrases tile x^n exactly
  size_t at = 0;
  for (const auto& ph : parse.phrases) {
    CHECK(ph.start == at);
    at += ph.length;
  }
  CHECK(at == x.size());

  // complete phrases are pairwise distinct and extend their parent by one
  auto strings = phrase_strings(x);
  std::set<std::string> complete;
  for (size_t j = 0; j < parse.phrases.size(); ++j) {
    const auto& ph = parse.phrases[j];
    if (ph.symbol) {
      CHECK(complete.insert(strings[j]).second);
      std::string parent = ph.parent == 0 ? "" : strings[ph.parent - 1];
      CHECK(strings[j] == parent + strings[j].back());
    } else {
      CHECK(j + 1 == parse.phrases.size());
      CHECK(parse.last_incomplete);
      CHECK(strings[j] == strings[ph.parent - 1]);
    }
  }
}

Sequence random_sequence(std::mt19937_64& rng, uint32_t alpha, size_t n) {
  Sequence x;
  x.alpha = alpha;
  for (size_t i = 0; i < n; ++i) x.symbols.push_back(uint32_t(rng() % alpha));
  return x;
}

}  // namespace

TEST_CASE("parse reproduces the abbabaabbaaabaa example") {
  Sequence x = Sequence::from_letters("abbabaabbaaabaa", 2);
  auto parse = lz78::parse(x);
  CHECK(parse.phrase_count == 8);
  CHECK(parse.last_incomplete);
  CHECK(phrase_strings(x) ==
        std::vector<std::string>{"a", "b", "ba", "baa", "bb", "aa", "ab", "aa"});
}

TEST_CASE("parse of single symbol and runs") {
  Sequence a = Sequence::from_letters("a", 2);
  auto pa = lz78::parse(a);
  CHECK(pa.phrase_count == 1);
  CHECK_FALSE(pa.last_incomplete);

  Sequence aaaa = Sequence::from_letters("aaaa", 2);
  auto pr = lz78::parse(aaaa);
  CHECK(pr.phrase_count == 3);
  CHECK(pr.last_incomplete);
  CHECK(phrase_strings(aaaa) == std::vector<std::string>{"a", "aa", "a"});

  CHECK_THROWS_AS(lz78::parse(Sequence{{}, 2}), Error);
}

TEST_CASE("parse agrees with the brute-force definition") {
  for (size_t n = 1; n <= 10; ++n) {
    for (uint64_t idx = 0; idx < (uint64_t(1) << n); ++idx) {
      Sequence x = Sequence::from_index(idx, n, 2);
      CHECK(phrase_strings(x) == brute_parse(x.to_letters()));
      check_parse_invariants(x);
    }
  }
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    Sequence x = random_sequence(rng, 2 + rng() % 2, 1 + rng() % 60);
    CHECK(phrase_strings(x) == brute_parse(x.to_letters()));
    check_parse_invariants(x);
  }
}

TEST_CASE("re-parsing a phrase-boundary prefix is a prefix of the parse") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    Sequence x = random_sequence(rng, 2, 40);
    auto parse = lz78::parse(x);
    size_t keep = 1 + rng() % parse.phrases.size();
    const auto& ph = parse.phrases[keep - 1];
    if (!ph.symbol) continue;
    size_t cut = ph.start + ph.length;
    Sequence prefix{{x.symbols.begin(), x.symbols.begin() + cut}, x.alpha};
    auto pp = lz78::parse(prefix);
    REQUIRE(pp.phrase_count == keep);
    for (size_t j = 0; j < keep; ++j) {
      CHECK(pp.phrases[j].start == parse.phrases[j].start);
      CHECK(pp.phrases[j].length == parse.phrases[j].length);
      CHECK(pp.phrases[j].parent == parse.phrases[j].parent);
    }
  }
}

TEST_CASE("normalized LZ complexity") {
  CHECK(lz78::lz_complexity(Sequence::from_letters("abbabaabbaaabaa", 2)) ==
        doctest::Approx(1.6).epsilon(1e-12));
  CHECK(lz78::lz_complexity(Sequence::from_letters("a", 2)) == 0.0);
  CHECK(lz78::lz_complexity(Sequence::from_letters("aaaa", 2)) ==
        doctest::Approx(3.0 * std::log2(3.0) / 4.0).epsilon(1e-12));
}

TEST_CASE("code length bound values") {
  CHECK(lz78::code_length_bound(8, 2) ==
        doctest::Approx(9.0 * std::log2(36.0)).epsilon(1e-12));
  CHECK(lz78::code_length_bound(1, 2) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("hand-encoded bodies") {
  CHECK(lz78::encode_body(Sequence::from_letters("a", 2)).to_string() == "0");
  CHECK(lz78::encode_body(Sequence::from_letters("ab", 2)).to_string() == "001");
}

TEST_CASE("encode/decode round trip with length bound") {
  for (size_t n = 1; n <= 11; ++n) {
    for (uint64_t idx = 0; idx < (uint64_t(1) << n); ++idx) {
      Sequence x = Sequence::from_index(idx, n, 2);
      Bitstring body = lz78::encode_body(x);
      uint64_t c = lz78::parse(x).phrase_count;
      CHECK(double(body.size()) <= lz78::code_length_bound(c, 2));
      CHECK(lz78::decode_body(body, 2, n) == x);
    }
  }
  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    uint32_t alpha = 2 + rng() % 3;
    Sequence x = random_sequence(rng, alpha, 1 + rng() % 300);
    Bitstring body = lz78::encode_body(x);
    uint64_t c = lz78::parse(x).phrase_count;
    CHECK(double(body.size()) <= lz78::code_length_bound(c, alpha));
    CHECK(lz78::decode_body(body, alpha, x.size()) == x);
  }
}

TEST_CASE("decode rejects malformed input distinctly") {
  // pointer to a not-yet-existing phrase: j=3 reads "11" = 3 >= 3
  Bitstring bad_ptr = Bitstring::from_string("0" "01" "11");
  CHECK_THROWS_WITH_AS(
      (void)lz78::decode_body(bad_ptr, 2, 4),
      doctest::Contains("points to"), Error);

  // phrase that cannot fit the remaining length
  Bitstring bad_fit = Bitstring::from_string("0" "10" "10");
  CHECK_THROWS_WITH_AS(
      (void)lz78::decode_body(bad_fit, 2, 4),
      doctest::Contains("does not fit"), Error);

  // body ends mid-phrase
  Bitstring cut = Bitstring::from_string("0");
  CHECK_THROWS_WITH_AS(
      (void)lz78::decode_body(cut, 2, 2),
      doctest::Contains("past end"), Error);

  // symbol outside a non-power-of-two alphabet
  Bitstring bad_sym = Bitstring::from_string("11");
  CHECK_THROWS_WITH_AS(
      (void)lz78::decode_body(bad_sym, 3, 1),
      doctest::Contains("outside alphabet"), Error);
}

TEST_CASE("capped encoding resolves the tie toward the raw branch") {
  Sequence a = Sequence::from_letters("a", 2);
  Bitstring capped = lz78::capped_encode_body(a);
  REQUIRE(capped.size() == 2);
  CHECK(capped[0] == 1);  // L = 1 is not strictly below ceil(1*log2(2)) = 1
  CHECK(lz78::capped_decode_body(capped, 2, 1) == a);
}

TEST_CASE("incompressible inputs take the raw branch at the cap") {
  size_t raw_branch = 0;
  for (uint64_t idx = 0; idx < (uint64_t(1) << 14); idx += 101) {
    Sequence x = Sequence::from_index(idx, 14, 2);
    if (lz78::encode_body(x).size() >= 14) {
      Bitstring b = lz78::capped_encode_body(x);
      CHECK(b[0] == 1);
      CHECK(b.size() == 15);  // flag + 14 raw bits
      ++raw_branch;
    }
  }
  CHECK(raw_branch > 0);
}

TEST_CASE("capped encoding round trip and cap bound") {
  std::mt19937_64 rng(13);
  for (size_t n = 1; n <= 12; ++n) {
    for (uint64_t idx = 0; idx < (uint64_t(1) << n); ++idx) {
      Sequence x = Sequence::from_index(idx, n, 2);
      Bitstring b = lz78::capped_encode_body(x);
      CHECK(b.size() <= lz78::raw_bit_count(n, 2) + 1);
      CHECK(lz78::capped_decode_body(b, 2, n) == x);
    }
  }
  for (int i = 0; i < 400; ++i) {
    uint32_t alpha = 2 + rng() % 3;
    Sequence x = random_sequence(rng, alpha, 1 + rng() % 300);
    Bitstring b = lz78::capped_encode_body(x);
    CHECK(b.size() <= lz78::raw_bit_count(x.size(), alpha) + 1);
    CHECK(lz78::capped_decode_body(b, alpha, x.size()) == x);
  }
}

TEST_CASE("raw bit count is an exact ceiling") {
  CHECK(lz78::raw_bit_count(1, 2) == 1);
  CHECK(lz78::raw_bit_count(14, 2) == 14);
  CHECK(lz78::raw_bit_count(3, 3) == 5);    // ceil(3 log2 3) = ceil(4.75)
  CHECK(lz78::raw_bit_count(4, 4) == 8);
  CHECK(lz78::raw_bit_count(512, 3) == 812);  // ceil(512 * 1.58496...)
}

TEST_CASE("compressed file layout") {
  Sequence x = Sequence::from_letters("abbabaabbaaabaa", 2);
  auto file = lz78::compress(x);
  REQUIRE(file.size() >= 10);
  CHECK(file[0] == 0x4C);
  CHECK(file[1] == 2);
  uint64_t n = 0;
  for (int i = 0; i < 8; ++i) n = (n << 8) | file[2 + i];
  CHECK(n == 15);
  CHECK(lz78::decompress(file) == x);

  auto bad_magic = file;
  bad_magic[0] = 0x00;
  CHECK_THROWS_WITH_AS((void)lz78::decompress(bad_magic),
                       doctest::Contains("magic"), Error);
  std::vector<uint8_t> truncated(file.begin(), file.begin() + 5);
  CHECK_THROWS_WITH_AS((void)lz78::decompress(truncated),
                       doctest::Contains("header"), Error);
}
