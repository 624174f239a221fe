#include "maxleak/bounds.hpp"

#include <cmath>
#include <set>
#include <unordered_map>

#include "maxleak/lz78.hpp"

namespace maxleak::bounds {

PhraseStateCounts phrase_state_counts(const fse::EncrypterSpec& spec,
                                      const Sequence& x) {
  lz78::PhraseParse parse = lz78::parse(x);
  auto states = fse::state_sequence(spec, x);
  PhraseStateCounts psc;
  psc.n = x.size();
  psc.num_states = spec.num_states;
  psc.phrase_count = parse.phrase_count;
  auto cell_of = [&](const lz78::Phrase& ph) {
    return std::tuple{uint64_t(ph.length), states[ph.start],
                      states[ph.start + ph.length]};
  };
  for (const auto& ph : parse.phrases) ++psc.counts[cell_of(ph)];
  if (parse.last_incomplete) {
    const auto& last = parse.phrases.back();
    const auto& twin = parse.phrases[last.parent - 1];  // same string
    psc.duplicate_final_in_cell = cell_of(last) == cell_of(twin);
  }
  return psc;
}

mpz_class permutation_product(const PhraseStateCounts& psc) {
  mpz_class prod = 1;
  mpz_class fac;
  for (const auto& [cell, count] : psc.counts) {
    mpz_fac_ui(fac.get_mpz_t(), count);
    prod *= fac;
  }
  if (psc.duplicate_final_in_cell) prod /= 2;
  return prod;
}

double permutation_lower_bound(const PhraseStateCounts& psc) {
  return log2_mpz(permutation_product(psc));
}

EntropyTerm entropy_term(const PhraseStateCounts& psc) {
  if (psc.phrase_count < 1) fail(Errc::bad_sequence, "need at least one phrase");
  EntropyTerm e;
  double c = double(psc.phrase_count);
  for (const auto& [cell, count] : psc.counts) {
    double p = double(count) / c;
    e.h -= p * std::log2(p);
  }
  double s = double(psc.num_states);
  e.bound = std::log2(double(psc.n) / c + 1.0) + std::log2(s * s * std::exp(1.0));
  e.holds = e.h <= e.bound + kFloatSlack;
  return e;
}

double delta_s(uint64_t n, uint64_t c, uint32_t s) {
  if (c < 1 || c > n || s < 1) fail(Errc::bad_sequence, "delta_s needs 1 <= c <= n, s >= 1");
  double r = double(c) / double(n);
  double log2e = std::log2(std::exp(1.0));
  return r * std::log2(double(n) / double(c)) + r * r * log2e +
         r * (2.0 * std::log2(double(s)) + log2e);
}

nlohmann::ordered_json BoundReport::to_json() const {
  nlohmann::ordered_json j;
  j["rho_lz"] = rho_lz;
  j["delta_s"] = delta_s;
  j["penalty_types"] = penalty_types;
  j["penalty_states"] = penalty_states;
  j["rhs"] = rhs;
  j["lhs"] = lhs;
  j["holds"] = holds;
  j["vacuous"] = vacuous;
  return j;
}

LZTypeReport lztype_check(const fse::EncrypterSpec& spec, const Sequence& x,
                          uint64_t budget) {
  LZTypeReport rep;
  PhraseStateCounts psc = phrase_state_counts(spec, x);
  fse::TypeClass tc = fse::empirical_joint(spec, x);
  auto members = fse::type_class_members(spec, tc, budget);
  rep.type_class_size = members.size();

  uint64_t n = x.size();
  uint64_t c = psc.phrase_count;
  rep.bound.rho_lz = lz78::lz_complexity(x);
  rep.bound.delta_s = delta_s(n, c, spec.num_states);
  rep.bound.lhs = std::log2(double(rep.type_class_size)) / double(n);
  rep.bound.rhs = rep.bound.rho_lz - rep.bound.delta_s;
  rep.bound.holds = rep.bound.lhs >= rep.bound.rhs - kFloatSlack;
  rep.bound.vacuous = rep.bound.rhs <= 0.0;

  mpz_class prod = permutation_product(psc);
  rep.factorial_log2 = log2_mpz(prod);
  rep.factorial_le_type = prod <= mpz_class(
      static_cast<unsigned long>(rep.type_class_size));
  rep.entropy = entropy_term(psc);
  double cd = double(c);
  double stirling =
      cd * std::log2(cd) - cd * rep.entropy.h - cd * std::log2(std::exp(1.0));
  rep.stirling_chain = rep.factorial_log2 >= stirling - kFloatSlack;
  return rep;
}

namespace {

double type_penalty(uint64_t n, uint32_t alpha, uint32_t s) {
  return (double(alpha) * double(s) - 1.0) * std::log2(double(n) + 1.0) /
         double(n);
}

double state_penalty(uint64_t n, uint32_t s) {
  return std::log2(double(s)) / double(n);
}

}  // namespace

double converse_leakage_rhs(uint64_t n, uint64_t c, uint32_t alpha, uint32_t s,
                            double rho_minus_sigma) {
  double rhs = rho_minus_sigma - delta_s(n, c, s) - type_penalty(n, alpha, s) -
               state_penalty(n, s);
  return rhs > 0.0 ? rhs : 0.0;
}

double converse_keyrate_rhs(uint64_t n, uint64_t c, uint32_t alpha, uint32_t s,
                            double rho, double lambda) {
  return rho - lambda - delta_s(n, c, s) - type_penalty(n, alpha, s) -
         state_penalty(n, s);
}

nlohmann::ordered_json ConverseReport::to_json() const {
  nlohmann::ordered_json j;
  j["il"] = il;
  j["prob_floor_ok"] = prob_floor_ok;
  j["pigeonhole_ok"] = pigeonhole_ok;
  j["zero_key_injective"] = zero_key_injective;
  j["type_count_ok"] = type_count_ok;
  j["type_class_count"] = type_class_count;
  j["leakage_bits"] = leakage_bits;
  j["argmax_input"] = argmax_input;
  j["bound"] = bound.to_json();
  j["all_ok"] = all_ok;
  return j;
}

ConverseReport converse_audit(const fse::EncrypterSpec& spec, size_t n,
                              uint64_t budget) {
  ConverseReport rep;
  fse::ILReport il = fse::is_information_lossless(spec, uint32_t(n), budget);
  if (il.verdict != fse::ILVerdict::IL) {
    fail(Errc::bad_spec,
         std::string("the converse audit presumes information losslessness; audit: ") +
             fse::to_string(il.verdict));
  }
  rep.il = true;

  leakage::Channel ch = leakage::induced_channel(spec, n, budget);
  leakage::LeakageReport lk = leakage::maximal_leakage(ch);
  rep.leakage_bits = lk.leakage_bits;

  // (a) every positive channel entry is at least 2^{-t_n(x)}
  rep.prob_floor_ok = true;
  for (size_t x = 0; x < ch.rows.size(); ++x) {
    Dyadic floor = Dyadic::pow2_neg(fse::key_demand(spec, ch.inputs[x]));
    for (const auto& [y, p] : ch.rows[x]) {
      if (p < floor) rep.prob_floor_ok = false;
    }
  }

  // type classes partition the input space; count bound and pigeonhole
  auto classes = fse::members_by_class(spec, n, budget);
  rep.type_class_count = classes.size();
  mpz_class cap;
  mpz_ui_pow_ui(cap.get_mpz_t(), n + 1,
                size_t(spec.alpha) * spec.num_states - 1);
  rep.type_count_ok = mpz_class(static_cast<unsigned long>(rep.type_class_count)) <= cap;

  rep.pigeonhole_ok = true;
  rep.zero_key_injective = true;
  bool check_injectivity = il.m0.has_value() && n >= *il.m0;
  for (const auto& [tclass, members] : classes) {
    std::set<uint32_t> reachable;
    std::map<uint32_t, std::set<std::string>> zero_key_by_final;
    std::map<uint32_t, uint64_t> members_by_final;
    for (uint64_t idx : members) {
      for (const auto& [y, p] : ch.rows[idx]) reachable.insert(y);
      const Sequence& x = ch.inputs[idx];
      uint64_t t = fse::key_demand(spec, x);
      Bitstring zeros;
      for (uint64_t i = 0; i < t; ++i) zeros.push_back(0);
      fse::Trace tr = fse::run(spec, x, zeros);
      uint32_t final_state = tr.states.back();
      zero_key_by_final[final_state].insert(fse::stream_key(spec, tr.outputs));
      ++members_by_final[final_state];
    }
    if (uint64_t(reachable.size()) * spec.num_states < members.size()) {
      rep.pigeonhole_ok = false;
    }
    if (check_injectivity) {
      for (const auto& [z, outs] : zero_key_by_final) {
        if (outs.size() != members_by_final[z]) rep.zero_key_injective = false;
      }
    }
  }

  // final inequality: leakage/n vs the clamped right side, with the
  // bracket maximized over inputs (delta_s uses each input's realized c)
  double best = -1e300;
  uint64_t best_idx = 0;
  uint64_t best_c = 1;
  for (size_t idx = 0; idx < ch.inputs.size(); ++idx) {
    const Sequence& x = ch.inputs[idx];
    uint64_t c = lz78::parse(x).phrase_count;
    double bracket = lz78::lz_complexity(x) - fse::key_rate(spec, x) -
                     delta_s(n, c, spec.num_states);
    if (bracket > best) {
      best = bracket;
      best_idx = idx;
      best_c = c;
    }
  }
  rep.argmax_input = best_idx;
  const Sequence& bx = ch.inputs[best_idx];
  rep.bound.rho_lz = lz78::lz_complexity(bx);
  rep.bound.delta_s = delta_s(n, best_c, spec.num_states);
  rep.bound.penalty_types = type_penalty(n, spec.alpha, spec.num_states);
  rep.bound.penalty_states = state_penalty(n, spec.num_states);
  double rhs = best - rep.bound.penalty_types - rep.bound.penalty_states;
  rep.bound.vacuous = rhs <= 0.0;
  rep.bound.rhs = rhs > 0.0 ? rhs : 0.0;
  rep.bound.lhs = rep.leakage_bits / double(n);
  rep.bound.holds = rep.bound.lhs >= rep.bound.rhs - kFloatSlack;

  rep.all_ok = rep.il && rep.prob_floor_ok && rep.pigeonhole_ok &&
               rep.zero_key_injective && rep.type_count_ok && rep.bound.holds;
  return rep;
}

}  // namespace maxleak::bounds
