#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <tuple>

#include <json.hpp>

#include "maxleak/fse.hpp"
#include "maxleak/leakage.hpp"
#include "maxleak/sequence.hpp"

namespace maxleak::bounds {

/// c_{l,z,z'}: phrases of length l starting at state z and ending at z',
/// tabulated over the incremental parse (final incomplete phrase included,
/// so the counts sum to c and the lengths sum to n).
struct PhraseStateCounts {
  std::map<std::tuple<uint64_t, uint32_t, uint32_t>, uint64_t> counts;
  uint64_t phrase_count = 0;  // c
  uint64_t n = 0;
  uint32_t num_states = 1;
  /// Complete phrases are pairwise distinct, but the incomplete final
  /// phrase repeats an earlier phrase verbatim; when both land in the same
  /// cell, that cell holds one string twice.
  bool duplicate_final_in_cell = false;
};

PhraseStateCounts phrase_state_counts(const fse::EncrypterSpec& spec,
                                      const Sequence& x);

/// Number of distinct sequences reachable by permuting phrases within
/// their (length, start state, end state) cells: prod over cells of the
/// cell's distinct orderings, i.e. prod(c_{lzz'}!) divided by 2 when the
/// incomplete final phrase duplicates its twin inside one cell. Every such
/// arrangement stays in the type class, so this lower-bounds |T(P_hat)|.
mpz_class permutation_product(const PhraseStateCounts& psc);

/// log2 of permutation_product.
double permutation_lower_bound(const PhraseStateCounts& psc);

struct EntropyTerm {
  double h = 0.0;      // H(L, Z, Z') of pi(l,z,z') = c_{lzz'}/c
  double bound = 0.0;  // log2(n/c + 1) + log2(s^2 e)
  bool holds = false;
};

EntropyTerm entropy_term(const PhraseStateCounts& psc);

/// (c/n) log2(n/c) + (c/n)^2 log2 e + (c/n) log2(s^2 e), with the realized
/// phrase count c = c(x^n).
double delta_s(uint64_t n, uint64_t c, uint32_t s);

inline constexpr double kFloatSlack = 1e-9;

struct BoundReport {
  double rho_lz = 0.0;
  double delta_s = 0.0;
  double penalty_types = 0.0;   // (alpha*s - 1) log2(n+1) / n
  double penalty_states = 0.0;  // log2(s) / n
  double rhs = 0.0;
  double lhs = 0.0;
  bool holds = false;
  bool vacuous = false;  // rhs clamped to zero

  nlohmann::ordered_json to_json() const;
};

/// Checks log2|T(x^n)|/n >= rho_LZ(x^n) - delta_s(n) by exhaustive
/// type-class enumeration, together with the exact intermediate chain
/// |T| >= prod(c_{lzz'}!) and log2 prod >= c log2 c - c H(L,Z,Z') - c log2 e.
struct LZTypeReport {
  BoundReport bound;
  uint64_t type_class_size = 0;
  double factorial_log2 = 0.0;
  bool factorial_le_type = false;  // prod(c!) <= |T|, exact integers
  bool stirling_chain = false;     // log2 prod >= c log2 c - cH - c log2 e
  EntropyTerm entropy;
};

LZTypeReport lztype_check(const fse::EncrypterSpec& spec, const Sequence& x,
                          uint64_t budget = fse::kDefaultBudget);

/// Leakage form of the converse right side, clamped at zero.
double converse_leakage_rhs(uint64_t n, uint64_t c, uint32_t alpha, uint32_t s,
                            double rho_minus_sigma);

/// Key-rate form: rho - lambda - delta_s - penalties (no clamp).
double converse_keyrate_rhs(uint64_t n, uint64_t c, uint32_t alpha, uint32_t s,
                            double rho, double lambda);

/// Instance-exact verification of every link in the converse proof chain.
struct ConverseReport {
  bool il = false;
  bool prob_floor_ok = false;      // positive entries >= 2^{-t_n(x)}, per row
  bool pigeonhole_ok = false;  // s * |Y(P_hat)| >= |T(P_hat)| per class
  bool zero_key_injective = false;  // x -> zero-key output, per final state
  bool type_count_ok = false;  // M_n <= (n+1)^{alpha s - 1}
  uint64_t type_class_count = 0;
  double leakage_bits = 0.0;
  uint64_t argmax_input = 0;  // input index attaining the bracket max
  BoundReport bound;          // lhs = leakage/n vs the leakage-form rhs
  bool all_ok = false;

  nlohmann::ordered_json to_json() const;
};

ConverseReport converse_audit(const fse::EncrypterSpec& spec, size_t n,
                              uint64_t budget = fse::kDefaultBudget);

}  // namespace maxleak::bounds
