// Acceptance harness: runs every advertised guarantee end to end and prints
// one PASS/FAIL line per criterion. Exit code is the number of failures.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "maxleak/bounds.hpp"
#include "maxleak/fse.hpp"
#include "maxleak/leakage.hpp"
#include "maxleak/lz78.hpp"
#include "maxleak/presets.hpp"
#include "maxleak/report.hpp"
#include "maxleak/scheme.hpp"
#include "maxleak/sequence.hpp"

using namespace maxleak;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void verdict(int id, const std::string& label, bool ok, double ms) {
  std::printf("[%s] criterion %2d: %s (%.1f ms)\n", ok ? "PASS" : "FAIL", id,
              label.c_str(), ms);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::vector<std::string> phrase_strings(const Sequence& x) {
  auto parse = lz78::parse(x);
  std::vector<std::string> out;
  for (const auto& ph : parse.phrases) {
    Sequence sub{{x.symbols.begin() + ph.start,
                  x.symbols.begin() + ph.start + ph.length},
                 x.alpha};
    out.push_back(sub.to_letters());
  }
  return out;
}

// ---- criterion 1: the 15-symbol reference parse, exactly -----------------

void criterion_1() {
  Sequence x = Sequence::from_letters("abbabaabbaaabaa", 2);
  (void)lz78::parse(x);  // warm caches before timing
  auto start = Clock::now();
  auto parse = lz78::parse(x);
  double elapsed = ms_since(start);
  bool ok = parse.phrase_count == 8 &&
            phrase_strings(x) == std::vector<std::string>{"a", "b", "ba", "baa",
                                                          "bb", "aa", "ab", "aa"} &&
            elapsed < 1.0;
  verdict(1, "LZ78 parse of abbabaabbaaabaa is a,b,ba,baa,bb,aa,ab,aa with c=8",
          ok, elapsed);
}

// ---- criteria 2+3: codec round trips and the code-length bound -----------

struct CodecSweep {
  uint64_t round_trip_failures = 0;
  uint64_t bound_violations = 0;
  uint64_t instances = 0;

  void visit(const Sequence& x) {
    ++instances;
    Bitstring body = lz78::encode_body(x);
    uint64_t c = lz78::parse(x).phrase_count;
    if (double(body.size()) > lz78::code_length_bound(c, x.alpha)) {
      ++bound_violations;
    }
    if (lz78::decode_body(body, x.alpha, x.size()) != x) ++round_trip_failures;
    Bitstring capped = lz78::capped_encode_body(x);
    if (lz78::capped_decode_body(capped, x.alpha, x.size()) != x) {
      ++round_trip_failures;
    }
    if (capped.size() > lz78::raw_bit_count(x.size(), x.alpha) + 1) {
      ++bound_violations;
    }
  }
};

void criteria_2_3() {
  auto start = Clock::now();
  CodecSweep sweep;
  for (size_t n = 1; n <= 14; ++n) {
    for (uint64_t idx = 0; idx < (uint64_t(1) << n); ++idx) {
      sweep.visit(Sequence::from_index(idx, n, 2));
    }
  }
  std::mt19937_64 rng(20260810);
  const uint32_t alphas[3] = {2, 3, 4};
  for (int i = 0; i < 10500; ++i) {
    uint32_t alpha = alphas[i % 3];
    size_t n = 1 + rng() % 512;
    Sequence x;
    x.alpha = alpha;
    x.symbols.reserve(n);
    for (size_t j = 0; j < n; ++j) x.symbols.push_back(uint32_t(rng() % alpha));
    sweep.visit(x);
  }
  double elapsed = ms_since(start);
  verdict(2,
          "codec round trip on all binary n<=14 plus 10500 random cases "
          "(alpha 2..4, n<=512): " +
              std::to_string(sweep.round_trip_failures) + " failures of " +
              std::to_string(sweep.instances),
          sweep.round_trip_failures == 0 && elapsed < 120000.0, elapsed);
  verdict(3,
          "code-length bound respected on every instance: " +
              std::to_string(sweep.bound_violations) + " violations",
          sweep.bound_violations == 0, elapsed);
}

// ---- criterion 4: the leakage oracle's exact reference values ------------

void criterion_4() {
  auto start = Clock::now();
  bool ok = true;

  auto pad = leakage::maximal_leakage(
      leakage::induced_channel(presets::xor_machine(), 4));
  ok = ok && pad.sum_max.is_one() && pad.leakage_bits == 0.0;

  for (size_t m : {2, 3, 5, 8}) {
    std::vector<Sequence> inputs;
    std::vector<std::vector<std::pair<std::string, Dyadic>>> rows;
    for (size_t i = 0; i < m; ++i) {
      inputs.push_back(Sequence::from_index(i, 1, uint32_t(m)));
      rows.push_back({{std::to_string(i), Dyadic::one()}});
    }
    auto rep = leakage::maximal_leakage(leakage::build_channel(
        uint32_t(m), 1, true, std::move(inputs), std::move(rows)));
    ok = ok && rep.sum_max == Dyadic::from_uint(static_cast<unsigned long>(m)) &&
         std::abs(rep.leakage_bits - std::log2(double(m))) < 1e-12;
  }

  auto half = leakage::maximal_leakage(
      leakage::induced_channel(presets::half_pad_machine(), 2));
  ok = ok && half.sum_max == Dyadic::scaled(mpz_class(2), 0) &&
       half.leakage_bits == 1.0;

  double elapsed = ms_since(start);
  verdict(4, "leakage oracle: full pad = 0, identity = log2 m, half-pad = 1 bit",
          ok && elapsed < 1000.0, elapsed);
}

// ---- criterion 5: the guessing-probability identity, exactly -------------

void criterion_5() {
  auto start = Clock::now();
  uint64_t checked = 0, violations = 0;
  for (const auto& name : presets::names()) {
    auto spec = presets::by_name(name);
    for (size_t n = 1; n <= 6; ++n) {
      auto ch = leakage::induced_channel(spec, n);
      auto rep = leakage::maximal_leakage(ch);
      auto gi = leakage::guessing_identity(ch);
      ++checked;
      if (gi.ratio != rep.sum_max.to_mpq()) ++violations;
      if (gi.pc_blind != mpq_class(1, long(1) << n)) ++violations;
      if (gi.pc_informed != gi.ratio * gi.pc_blind) ++violations;
    }
  }
  double elapsed = ms_since(start);
  verdict(5,
          "2^leakage = pc_informed/pc_blind exactly on " +
              std::to_string(checked) + " induced channels (6 specs, n<=6)",
          violations == 0 && checked >= 30 && elapsed < 60000.0, elapsed);
}

// ---- criterion 6: scheme leakage against its ceiling ----------------------

void criterion_6() {
  auto start = Clock::now();
  bool ok = true;
  for (size_t n : {6, 8}) {
    for (const char* lam : {"0", "1/4", "1/2"}) {
      scheme::SchemeConfig cfg{scheme::Rational::parse(lam), 2,
                               scheme::Compressor::capped_lz78, false};
      auto ch = leakage::scheme_channel(cfg, n);
      auto rep = leakage::maximal_leakage(ch);
      uint64_t l_max = 0;
      for (const auto& x : ch.inputs) {
        l_max = std::max<uint64_t>(l_max, scheme::codeword(x, cfg).size());
      }
      double bound = scheme::leakage_upper_bound(n, cfg.lambda, l_max);
      ok = ok && rep.leakage_bits <= bound + bounds::kFloatSlack;
    }
    scheme::SchemeConfig padded{scheme::Rational{0, 1}, 2,
                                scheme::Compressor::capped_lz78, true};
    auto rep = leakage::maximal_leakage(leakage::scheme_channel(padded, n));
    ok = ok && rep.sum_max.is_one() && rep.leakage_bits == 0.0;
  }
  double elapsed = ms_since(start);
  verdict(6,
          "LZ-OTP leakage <= n*lambda + log2(L_max) for n in {6,8}, lambda in "
          "{0,1/4,1/2}; padded lambda=0 exactly 0",
          ok && elapsed < 600000.0, elapsed);
}

// ---- criterion 7: key-rate cap and the exact lambda discount -------------

void criterion_7() {
  auto start = Clock::now();
  bool ok = true;
  scheme::SchemeConfig zero{scheme::Rational{0, 1}, 2,
                            scheme::Compressor::capped_lz78, false};
  for (size_t n = 1; n <= 14; ++n) {
    for (uint64_t idx = 0; idx < (uint64_t(1) << n); ++idx) {
      Sequence x = Sequence::from_index(idx, n, 2);
      uint64_t lp = lz78::capped_encode_body(x).size();
      uint64_t m0 = scheme::encrypted_prefix(lp, n, zero.lambda);
      if (m0 != lp) ok = false;  // lambda = 0 pads the whole codeword
      // sigma * n = L' <= n log2(alpha) + 2, in integers: L' <= n + 2
      if (lp > n + 2) ok = false;
      // growing lambda removes exactly floor(n*lambda) pad bits while it fits
      for (const char* lam : {"1/4", "1/2", "1"}) {
        scheme::Rational r = scheme::Rational::parse(lam);
        uint64_t allowance = r.floor_times(n);
        if (allowance > lp) continue;
        uint64_t m = scheme::encrypted_prefix(lp, n, r);
        if (m0 - m != allowance) ok = false;
      }
    }
  }
  double elapsed = ms_since(start);
  verdict(7,
          "key rate: L'/n <= log2(alpha) + 2/n on all n<=14; lambda discount "
          "is exactly floor(n*lambda)/n",
          ok, elapsed);
}

// ---- criteria 8-10: permutation, entropy, LZ-type chain at n <= 12 --------

void criteria_8_9_10() {
  auto start = Clock::now();
  uint64_t factorial_violations = 0, entropy_violations = 0,
           lztype_violations = 0, instances = 0;
  for (const auto& name : {"xor", "toggle"}) {
    auto spec = presets::by_name(name);
    for (size_t n = 1; n <= 12; ++n) {
      auto classes = fse::members_by_class(spec, n);
      for (const auto& [tclass, members] : classes) {
        mpz_class size(static_cast<unsigned long>(members.size()));
        double lhs = std::log2(double(members.size())) / double(n);
        for (uint64_t idx : members) {
          ++instances;
          Sequence x = Sequence::from_index(idx, n, 2);
          auto psc = bounds::phrase_state_counts(spec, x);
          if (bounds::permutation_product(psc) > size) ++factorial_violations;
          auto ent = bounds::entropy_term(psc);
          if (!ent.holds) ++entropy_violations;
          double rhs = lz78::lz_complexity(x) -
                       bounds::delta_s(n, psc.phrase_count, spec.num_states);
          if (lhs < rhs - bounds::kFloatSlack) ++lztype_violations;
        }
      }
    }
  }
  double elapsed = ms_since(start);
  verdict(8,
          "factorial bound prod(c_lzz'!) <= |T| on all " +
              std::to_string(instances) +
              " instances (one-state + toggle, n<=12): " +
              std::to_string(factorial_violations) + " violations",
          factorial_violations == 0 && elapsed < 900000.0, elapsed);
  verdict(9,
          "entropy bound H(L,Z,Z') <= log2(n/c+1) + log2(s^2 e): " +
              std::to_string(entropy_violations) + " violations",
          entropy_violations == 0, elapsed);
  verdict(10,
          "LZ-type bound log2|T|/n >= rho_LZ - delta_s(n): " +
              std::to_string(lztype_violations) + " violations",
          lztype_violations == 0, elapsed);
}

// ---- criterion 11: the converse proof chain on IL machines ----------------

void criterion_11() {
  auto start = Clock::now();
  bool ok = true;
  uint64_t vacuous = 0, audits = 0;
  for (const auto& name : {"xor", "toggle"}) {
    auto spec = presets::by_name(name);
    for (size_t n = 1; n <= 8; ++n) {
      auto rep = bounds::converse_audit(spec, n);
      ++audits;
      if (rep.bound.vacuous) ++vacuous;
      ok = ok && rep.il && rep.prob_floor_ok && rep.pigeonhole_ok &&
           rep.zero_key_injective && rep.type_count_ok && rep.bound.holds;
    }
  }
  double elapsed = ms_since(start);
  verdict(11,
          "converse chain (probability floor, pigeonhole, class-count cap, final bound) on xor "
          "+ toggle, n<=8: all hold; " +
              std::to_string(vacuous) + "/" + std::to_string(audits) +
              " final bounds vacuous at this scale",
          ok && elapsed < 600000.0, elapsed);
}

// ---- criterion 12: byte-identical reports, including parallel runs --------

void criterion_12() {
  auto start = Clock::now();
  bool ok = true;

  auto spec = presets::toggle_machine();
  std::vector<Sequence> xs;
  for (uint64_t idx = 0; idx < (uint64_t(1) << 8); ++idx) {
    xs.push_back(Sequence::from_index(idx, 8, 2));
  }
  report::Options serial{fse::kDefaultBudget, 1};
  report::Options parallel{fse::kDefaultBudget, 4};
  auto a = report::wrap("bounds audit", report::bounds_audit(spec, 8, xs, true, serial), 1);
  auto b = report::wrap("bounds audit", report::bounds_audit(spec, 8, xs, true, parallel), 1);
  ok = ok && a.dump() == b.dump();

  scheme::SchemeConfig cfg{scheme::Rational{1, 2}, 2,
                           scheme::Compressor::capped_lz78, false};
  auto c = report::wrap("leakage", report::leakage_scheme(cfg, 8, serial), 5);
  auto d = report::wrap("leakage", report::leakage_scheme(cfg, 8, serial), 5);
  ok = ok && c.dump() == d.dump();

  auto e = report::wrap("fse types",
                        report::type_census(spec, 6, std::nullopt, serial), 3);
  auto f = report::wrap("fse types",
                        report::type_census(spec, 6, std::nullopt, parallel), 3);
  ok = ok && e.dump() == f.dump();

  double elapsed = ms_since(start);
  verdict(12, "reports byte-identical across reruns and across 1 vs 4 jobs",
          ok, elapsed);
}

}  // namespace

int main() {
  std::printf("maxleak acceptance suite\n");
  criterion_1();
  criteria_2_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criteria_8_9_10();
  criterion_11();
  criterion_12();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) FAILED\n", g_failures);
  }
  return g_failures;
}
