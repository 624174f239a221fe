#pragma once

#include <string>
#include <vector>

#include "maxleak/fse.hpp"

namespace maxleak::presets {

/// One state, delta = 1, y = x XOR k: the bitwise one-time pad.
fse::EncrypterSpec xor_machine();

/// One state, delta = 0, f = lambda: the idling (constant-output) machine.
fse::EncrypterSpec idle_machine(uint32_t alpha = 2);

/// One state, delta = 0, y = binary code of x: sends the plaintext clear.
fse::EncrypterSpec identity_machine(uint32_t alpha = 2);

/// Two states, g(z,.) = 1-z; pads at state 0 (delta 1), clear at state 1.
fse::EncrypterSpec toggle_machine();

/// Two states, state 1 absorbing: pads the first symbol, rest clear.
fse::EncrypterSpec half_pad_machine();

/// Two states tracking the previous symbol; pads after a 1, clear after a 0.
fse::EncrypterSpec last_symbol_machine();

fse::EncrypterSpec by_name(const std::string& name);
std::vector<std::string> names();

}  // namespace maxleak::presets
