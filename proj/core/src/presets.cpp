#include "maxleak/presets.hpp"

#include <bit>

namespace maxleak::presets {

using fse::EncrypterSpec;

namespace {

Bitstring bit(uint8_t b) {
  Bitstring s;
  s.push_back(b);
  return s;
}

// out_alphabet = all width-w binary strings, indexed by value
std::vector<Bitstring> binary_codes(unsigned width) {
  std::vector<Bitstring> out;
  for (uint64_t v = 0; v < (uint64_t(1) << width); ++v) {
    BitWriter w;
    w.put_uint(v, width);
    out.push_back(std::move(w.out));
  }
  return out;
}

}  // namespace

EncrypterSpec xor_machine() {
  EncrypterSpec s;
  s.name = "xor";
  s.alpha = 2;
  s.num_states = 1;
  s.out_alphabet = {bit(0), bit(1)};
  s.key_bits = {1, 1};
  s.next_state = {0, 0};
  s.output = {{0, 1}, {1, 0}};  // f(z, x, k) = x ^ k
  s.validate();
  return s;
}

EncrypterSpec idle_machine(uint32_t alpha) {
  EncrypterSpec s;
  s.name = "idle";
  s.alpha = alpha;
  s.num_states = 1;
  s.out_alphabet = {Bitstring{}};
  s.key_bits.assign(alpha, 0);
  s.next_state.assign(alpha, 0);
  s.output.assign(alpha, {0});
  s.validate();
  return s;
}

EncrypterSpec identity_machine(uint32_t alpha) {
  EncrypterSpec s;
  s.name = "identity";
  s.alpha = alpha;
  s.num_states = 1;
  unsigned width = unsigned(std::bit_width(uint64_t(alpha - 1)));
  s.out_alphabet = binary_codes(width);
  s.key_bits.assign(alpha, 0);
  s.next_state.assign(alpha, 0);
  for (uint32_t x = 0; x < alpha; ++x) s.output.push_back({x});
  s.validate();
  return s;
}

EncrypterSpec toggle_machine() {
  EncrypterSpec s;
  s.name = "toggle";
  s.alpha = 2;
  s.num_states = 2;
  s.out_alphabet = {bit(0), bit(1)};
  s.key_bits = {1, 1, 0, 0};
  s.next_state = {1, 1, 0, 0};          // g(z, .) = 1 - z
  s.output = {{0, 1}, {1, 0}, {0}, {1}};  // pad at z0, clear at z1
  s.validate();
  return s;
}

EncrypterSpec half_pad_machine() {
  EncrypterSpec s;
  s.name = "half-pad";
  s.alpha = 2;
  s.num_states = 2;
  s.out_alphabet = {bit(0), bit(1)};
  s.key_bits = {1, 1, 0, 0};
  s.next_state = {1, 1, 1, 1};          // state 1 absorbing
  s.output = {{0, 1}, {1, 0}, {0}, {1}};
  s.validate();
  return s;
}

EncrypterSpec last_symbol_machine() {
  EncrypterSpec s;
  s.name = "last-symbol";
  s.alpha = 2;
  s.num_states = 2;
  s.out_alphabet = {bit(0), bit(1)};
  s.key_bits = {0, 0, 1, 1};
  s.next_state = {0, 1, 0, 1};          // g(z, x) = x
  s.output = {{0}, {1}, {0, 1}, {1, 0}};
  s.validate();
  return s;
}

EncrypterSpec by_name(const std::string& name) {
  if (name == "xor") return xor_machine();
  if (name == "idle") return idle_machine();
  if (name == "identity") return identity_machine();
  if (name == "toggle") return toggle_machine();
  if (name == "half-pad") return half_pad_machine();
  if (name == "last-symbol") return last_symbol_machine();
  fail(Errc::bad_spec, "unknown preset machine: " + name);
}

std::vector<std::string> names() {
  return {"xor", "idle", "identity", "toggle", "half-pad", "last-symbol"};
}

}  // namespace maxleak::presets
