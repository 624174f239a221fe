#include <doctest.h>

#include "maxleak/leakage.hpp"
#include "maxleak/presets.hpp"
#include "maxleak/scheme.hpp"

using namespace maxleak;

namespace {

// y = x identity channel over m one-symbol inputs
leakage::Channel identity_channel(size_t m) {
  std::vector<Sequence> inputs;
  std::vector<std::vector<std::pair<std::string, Dyadic>>> rows;
  for (size_t i = 0; i < m; ++i) {
    inputs.push_back(Sequence::from_index(i, 1, uint32_t(m)));
    rows.push_back({{std::to_string(i), Dyadic::one()}});
  }
  return leakage::build_channel(uint32_t(m), 1, true, std::move(inputs),
                                std::move(rows));
}

}  // namespace

TEST_CASE("induced channel of the one-time pad at n=1") {
  auto ch = leakage::induced_channel(presets::xor_machine(), 1);
  REQUIRE(ch.inputs.size() == 2);
  REQUIRE(ch.outputs.size() == 2);
  for (size_t x = 0; x < 2; ++x) {
    for (uint32_t y = 0; y < 2; ++y) {
      const Dyadic* p = ch.entry(x, y);
      REQUIRE(p != nullptr);
      CHECK(*p == Dyadic::pow2_neg(1));
    }
  }
}

TEST_CASE("induced channel of the idle machine is a point mass") {
  auto ch = leakage::induced_channel(presets::idle_machine(2), 3);
  CHECK(ch.outputs.size() == 1);
  for (const auto& row : ch.rows) {
    REQUIRE(row.size() == 1);
    CHECK(row[0].second.is_one());
  }
  CHECK(leakage::maximal_leakage(ch).leakage_bits == 0.0);
}

TEST_CASE("toggle machine rows by hand at n=2") {
  // step 1 padded (state 0), step 2 clear (state 1):
  // P(y | x) = 1/2 iff y_2 = x_2, else 0
  auto ch = leakage::induced_channel(presets::toggle_machine(), 2);
  REQUIRE(ch.inputs.size() == 4);
  REQUIRE(ch.outputs.size() == 4);
  for (size_t x = 0; x < 4; ++x) {
    uint32_t x2 = ch.inputs[x].symbols[1];
    size_t positive = 0;
    for (uint32_t y = 0; y < uint32_t(ch.outputs.size()); ++y) {
      const Dyadic* p = ch.entry(x, y);
      // output key "b1.b2."
      char y2 = ch.outputs[y][2];
      if (p) {
        ++positive;
        CHECK(*p == Dyadic::pow2_neg(1));
        CHECK(y2 == (x2 ? '1' : '0'));
      }
    }
    CHECK(positive == 2);
  }
  auto rep = leakage::maximal_leakage(ch);
  CHECK(rep.sum_max == Dyadic::scaled(mpz_class(2), 0));
  CHECK(rep.leakage_bits == 1.0);
}

TEST_CASE("maximal leakage oracle on the three reference channels") {
  // full pad: leakage exactly 0
  auto pad = leakage::induced_channel(presets::xor_machine(), 3);
  auto pr = leakage::maximal_leakage(pad);
  CHECK(pr.sum_max.is_one());
  CHECK(pr.leakage_bits == 0.0);

  // identity on m inputs: exactly log2 m
  for (size_t m : {2, 3, 5, 8}) {
    auto rep = leakage::maximal_leakage(identity_channel(m));
    CHECK(rep.sum_max == Dyadic::from_uint(static_cast<unsigned long>(m)));
    CHECK(rep.leakage_bits == doctest::Approx(std::log2(double(m))).epsilon(1e-12));
  }

  // half-pad on two bits: exactly 1 bit
  auto hp = leakage::induced_channel(presets::half_pad_machine(), 2);
  auto hr = leakage::maximal_leakage(hp);
  CHECK(hr.sum_max == Dyadic::scaled(mpz_class(2), 0));
  CHECK(hr.leakage_bits == 1.0);
}

TEST_CASE("leakage is zero iff all rows are equal") {
  auto ch = leakage::induced_channel(presets::last_symbol_machine(), 3);
  auto rep = leakage::maximal_leakage(ch);
  CHECK(rep.leakage_bits > 0.0);
  CHECK(rep.sum_max > Dyadic::one());
}

TEST_CASE("guessing identity on induced channels") {
  for (const auto& name : presets::names()) {
    auto spec = presets::by_name(name);
    if (spec.alpha != 2) continue;
    for (size_t n = 1; n <= 4; ++n) {
      auto ch = leakage::induced_channel(spec, n);
      auto rep = leakage::maximal_leakage(ch);
      auto gi = leakage::guessing_identity(ch);
      CHECK(gi.ratio == rep.sum_max.to_mpq());
      CHECK(gi.pc_blind == mpq_class(1, 1 << n));
    }
  }
  // one-time pad at n=1: pc_i = pc_u = 1/2
  auto gi = leakage::guessing_identity(
      leakage::induced_channel(presets::xor_machine(), 1));
  CHECK(gi.pc_informed == mpq_class(1, 2));
  CHECK(gi.pc_blind == mpq_class(1, 2));
  CHECK(gi.ratio == 1);

  // identity at n=1: pc_i = 1, ratio 2
  auto gid = leakage::guessing_identity(
      leakage::induced_channel(presets::identity_machine(2), 1));
  CHECK(gid.pc_informed == 1);
  CHECK(gid.ratio == 2);

  // half-pad two bits: pc_i = 1/2, ratio 2
  auto gih = leakage::guessing_identity(
      leakage::induced_channel(presets::half_pad_machine(), 2));
  CHECK(gih.pc_informed == mpq_class(1, 2));
  CHECK(gih.ratio == 2);
}

TEST_CASE("guessing identity refuses partial channels") {
  auto ch = leakage::induced_channel(presets::xor_machine(), 2);
  ch.full_input_space = false;
  CHECK_THROWS_AS(leakage::guessing_identity(ch), Error);
}

TEST_CASE("merging outputs never increases leakage") {
  auto check_dpi = [](const leakage::Channel& ch) {
    double base = leakage::maximal_leakage(ch).leakage_bits;
    // collapse each output to its first two characters
    auto merged = leakage::merge_outputs(ch, [](const std::string& y) {
      return y.substr(0, std::min<size_t>(2, y.size()));
    });
    CHECK(leakage::maximal_leakage(merged).leakage_bits <= base + 1e-9);
    // collapse everything to one output: leakage exactly 0
    auto all = leakage::merge_outputs(
        ch, [](const std::string&) { return std::string("*"); });
    CHECK(leakage::maximal_leakage(all).leakage_bits == 0.0);
  };
  check_dpi(leakage::induced_channel(presets::toggle_machine(), 4));
  check_dpi(leakage::induced_channel(presets::last_symbol_machine(), 4));
  check_dpi(leakage::induced_channel(presets::identity_machine(2), 3));
}

TEST_CASE("channel rows must sum to one") {
  auto ch = leakage::induced_channel(presets::xor_machine(), 1);
  ch.rows[0].pop_back();
  CHECK_THROWS_AS(ch.check_rows(), Error);
}

TEST_CASE("channel JSON dump and read") {
  auto ch = leakage::induced_channel(presets::toggle_machine(), 3);
  auto j = ch.to_json();
  auto back = leakage::Channel::from_json(j);
  CHECK(back.inputs.size() == ch.inputs.size());
  CHECK(back.outputs == ch.outputs);
  auto a = leakage::maximal_leakage(ch);
  auto b = leakage::maximal_leakage(back);
  CHECK(a.sum_max == b.sum_max);
}

TEST_CASE("scheme channel probabilities are uniform over the pad masks") {
  scheme::SchemeConfig cfg;
  cfg.lambda = scheme::Rational{1, 2};
  auto ch = leakage::scheme_channel(cfg, 4);
  for (size_t x = 0; x < ch.inputs.size(); ++x) {
    Bitstring body = scheme::codeword(ch.inputs[x], cfg);
    uint64_t m = scheme::encrypted_prefix(body.size(), 4, cfg.lambda);
    REQUIRE(ch.rows[x].size() == (uint64_t(1) << m));
    for (const auto& [y, p] : ch.rows[x]) {
      CHECK(p == Dyadic::pow2_neg(m));
      CHECK(ch.outputs[y].size() == body.size());
    }
  }
}
