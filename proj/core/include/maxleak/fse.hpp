#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxleak/bits.hpp"
#include "maxleak/sequence.hpp"

namespace maxleak::fse {

inline constexpr uint64_t kDefaultBudget = uint64_t(1) << 24;

/// The encrypter sextuplet (X, Y, Z, f, g, Delta) as finite tables.
///
/// delta(z,x) key bits are consumed per step; the output table stores, for
/// each (z,x), one out_alphabet index per key pattern. Key patterns are read
/// MSB-first: the first consumed key bit is the pattern's top bit.
struct EncrypterSpec {
  std::string name;  // optional label, carried through reports
  uint32_t alpha = 2;
  uint32_t num_states = 1;
  uint32_t initial_state = 0;  // z_star
  std::vector<Bitstring> out_alphabet;
  std::vector<uint8_t> key_bits;      // delta, indexed [z*alpha + x]
  std::vector<uint32_t> next_state;   // g, indexed [z*alpha + x]
  std::vector<std::vector<uint32_t>>
      output;  // f, indexed [z*alpha + x][key pattern], out_alphabet index

  size_t cell(uint32_t z, uint32_t x) const { return size_t(z) * alpha + x; }
  uint8_t delta(uint32_t z, uint32_t x) const { return key_bits[cell(z, x)]; }
  uint32_t g(uint32_t z, uint32_t x) const { return next_state[cell(z, x)]; }
  uint32_t f(uint32_t z, uint32_t x, uint64_t key_pattern) const {
    return output[cell(z, x)][key_pattern];
  }

  void validate() const;
  nlohmann::ordered_json to_json() const;
  static EncrypterSpec from_json(const nlohmann::json& j);
};

/// Full run record of an encrypter on an input.
struct Trace {
  std::vector<uint32_t> states;       // z_1..z_{n+1}
  std::vector<uint64_t> key_offsets;  // t_0..t_n
  std::vector<Bitstring> key_segments;
  std::vector<uint32_t> outputs;  // out_alphabet indices y_1..y_n

  uint64_t total_key_bits() const { return key_offsets.back(); }
};

Trace run(const EncrypterSpec& spec, const Sequence& x, const Bitstring& key);

/// z_1..z_{n+1}; key-independent (the state is driven by the
/// plaintext alone).
std::vector<uint32_t> state_sequence(const EncrypterSpec& spec,
                                     const Sequence& x);

/// Total key demand t_n of x.
uint64_t key_demand(const EncrypterSpec& spec, const Sequence& x);

/// sigma_E(x^n) = t_n / n.
double key_rate(const EncrypterSpec& spec, const Sequence& x);

/// Ciphertext stream with per-step boundaries: each y_i's bits followed by
/// a '.' step separator, so distinct output vectors never collide even when
/// their concatenations agree.
std::string stream_key(const EncrypterSpec& spec,
                       const std::vector<uint32_t>& outputs);

/// Empirical joint counts n(x, z) identifying the type class T(P_hat).
struct TypeClass {
  uint32_t alpha = 2;
  uint32_t num_states = 1;
  std::vector<uint64_t> counts;  // indexed [x*num_states + z]
  uint64_t n = 0;

  uint64_t count(uint32_t x, uint32_t z) const {
    return counts[size_t(x) * num_states + z];
  }
  friend bool operator==(const TypeClass&, const TypeClass&) = default;
  friend std::strong_ordering operator<=>(const TypeClass&,
                                          const TypeClass&) = default;
};

TypeClass empirical_joint(const EncrypterSpec& spec, const Sequence& x);

/// sigma from the type alone: sum over (x,z) of P_hat(x,z) * delta(z,x).
double key_rate_from_type(const EncrypterSpec& spec, const TypeClass& t);

/// Exact T(P_hat) by exhaustive enumeration over {0..alpha-1}^n.
std::vector<Sequence> type_class_members(const EncrypterSpec& spec,
                                         const TypeClass& t,
                                         uint64_t budget = kDefaultBudget);

struct TypeCensus {
  std::map<TypeClass, uint64_t> sizes;  // |T(P_hat)| per distinct class
  uint64_t class_count() const { return sizes.size(); }
};

TypeCensus count_type_classes(const EncrypterSpec& spec, size_t n,
                              uint64_t budget = kDefaultBudget);

/// Like count_type_classes but keeps the member index lists, for audits.
std::map<TypeClass, std::vector<uint64_t>> members_by_class(
    const EncrypterSpec& spec, size_t n, uint64_t budget = kDefaultBudget);

enum class ILVerdict { IL, notIL, inconclusive };

const char* to_string(ILVerdict v);

struct ILReport {
  ILVerdict verdict = ILVerdict::inconclusive;
  std::optional<uint32_t> m0;  // first collision-free length index when IL
  std::vector<uint32_t> colliding;  // m values with a collision
  uint32_t horizon = 0;
};

/// Exhaustive information-losslessness audit: for each segment length
/// m+1 <= horizon+1 and each start state, every (key, output vector, end
/// state) triple must identify the input segment uniquely. The relaxed
/// notion tolerates collisions at short lengths, so the verdict is IL only
/// when the colliding lengths form a prefix below a clean run that reaches
/// the horizon; a collision at the horizon itself is notIL; anything else
/// (collisions that vanish and reappear) is inconclusive.
ILReport is_information_lossless(const EncrypterSpec& spec, uint32_t horizon,
                                 uint64_t budget = kDefaultBudget);

}  // namespace maxleak::fse
