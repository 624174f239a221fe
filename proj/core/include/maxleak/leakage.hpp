#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxleak/dyadic.hpp"
#include "maxleak/fse.hpp"
#include "maxleak/sequence.hpp"

namespace maxleak::scheme {
struct SchemeConfig;
}

namespace maxleak::leakage {

/// Finite channel P(y|x) with exact dyadic entries. Inputs are sequences;
/// outputs are canonical ciphertext-stream keys (per-step boundaries kept).
/// Every row sums to exactly one.
struct Channel {
  uint32_t alpha = 2;
  size_t n = 0;
  bool full_input_space = false;  // inputs enumerate {0..alpha-1}^n in order
  std::vector<Sequence> inputs;
  std::vector<std::string> outputs;  // sorted, unique
  // rows[x] = (output index, P(y|x)) sorted by output index
  std::vector<std::vector<std::pair<uint32_t, Dyadic>>> rows;

  void check_rows() const;  // exact row-normalization audit
  const Dyadic* entry(size_t x, uint32_t y) const;

  nlohmann::ordered_json to_json() const;
  static Channel from_json(const nlohmann::json& j);
};

/// Assembles a channel from per-input sparse rows keyed by output string.
Channel build_channel(uint32_t alpha, size_t n, bool full_space,
                      std::vector<Sequence> inputs,
                      std::vector<std::vector<std::pair<std::string, Dyadic>>>
                          sparse_rows);

/// Channel of an encrypter fed uniform i.i.d. key bits: for each input,
/// every key string of length t_n(x) is enumerated and the resulting output
/// vector weighted 2^{-t_n(x)}.
Channel induced_channel(const fse::EncrypterSpec& spec, size_t n,
                        uint64_t budget = fse::kDefaultBudget);

struct LeakageReport {
  double leakage_bits = 0.0;
  Dyadic sum_max;
  std::vector<uint32_t> argmax;  // per output, an input index attaining the max
  bool has_guessing = false;     // set when the input space is full
  mpq_class pc_informed = 0;
  mpq_class pc_blind = 0;

  nlohmann::ordered_json to_json() const;
};

/// L(x^n -> Y^n) = log2 sum_y max_x P(y|x), computed exactly; only the
/// final log2 is floating-point.
LeakageReport maximal_leakage(const Channel& ch);

struct GuessingIdentity {
  mpq_class pc_informed;
  mpq_class pc_blind;
  mpq_class ratio;  // equals 2^leakage exactly
};

/// Correct-guessing probabilities of a uniform input, informed vs blind.
/// Requires the full input space.
GuessingIdentity guessing_identity(const Channel& ch);

/// Channel of the LZ-plus-one-time-pad scheme: each input maps uniformly to
/// the 2^{m(x)} ciphertexts that share its clear suffix.
Channel scheme_channel(const scheme::SchemeConfig& cfg, size_t n,
                       uint64_t budget = fse::kDefaultBudget);

/// Deterministic output post-processing; leakage can only shrink.
Channel merge_outputs(const Channel& ch,
                      const std::function<std::string(const std::string&)>& f);

}  // namespace maxleak::leakage
