#include "maxleak/fse.hpp"

#include <algorithm>
#include <unordered_map>

namespace maxleak::fse {

void EncrypterSpec::validate() const {
  if (alpha < 2) fail(Errc::bad_spec, "alpha must be >= 2");
  if (num_states < 1) fail(Errc::bad_spec, "need at least one state");
  if (initial_state >= num_states) fail(Errc::bad_spec, "z_star out of range");
  if (out_alphabet.empty()) fail(Errc::bad_spec, "output alphabet is empty");
  for (size_t i = 0; i < out_alphabet.size(); ++i) {
    for (size_t j = i + 1; j < out_alphabet.size(); ++j) {
      if (out_alphabet[i] == out_alphabet[j]) {
        fail(Errc::bad_spec, "duplicate output alphabet entry");
      }
    }
  }
  size_t cells = size_t(num_states) * alpha;
  if (key_bits.size() != cells || next_state.size() != cells ||
      output.size() != cells) {
    fail(Errc::bad_spec, "delta/g/f tables must cover all (state, symbol) cells");
  }
  for (size_t i = 0; i < cells; ++i) {
    if (next_state[i] >= num_states) fail(Errc::bad_spec, "g value out of range");
    if (key_bits[i] > 62) fail(Errc::bad_spec, "delta too large to enumerate");
    if (output[i].size() != (uint64_t(1) << key_bits[i])) {
      fail(Errc::bad_spec, "f must define exactly 2^delta(z,x) key patterns");
    }
    for (uint32_t y : output[i]) {
      if (y >= out_alphabet.size()) fail(Errc::bad_spec, "f output not in alphabet");
    }
  }
}

nlohmann::ordered_json EncrypterSpec::to_json() const {
  nlohmann::ordered_json j;
  if (!name.empty()) j["name"] = name;
  j["alpha"] = alpha;
  j["s"] = num_states;
  j["z_star"] = initial_state;
  auto outs = nlohmann::ordered_json::array();
  for (const auto& y : out_alphabet) outs.push_back(y.to_string());
  j["out_alphabet"] = outs;
  auto delta_rows = nlohmann::ordered_json::array();
  auto g_rows = nlohmann::ordered_json::array();
  for (uint32_t z = 0; z < num_states; ++z) {
    auto drow = nlohmann::ordered_json::array();
    auto grow = nlohmann::ordered_json::array();
    for (uint32_t x = 0; x < alpha; ++x) {
      drow.push_back(delta(z, x));
      grow.push_back(g(z, x));
    }
    delta_rows.push_back(drow);
    g_rows.push_back(grow);
  }
  j["delta"] = delta_rows;
  j["g"] = g_rows;
  auto fobj = nlohmann::ordered_json::object();
  for (uint32_t z = 0; z < num_states; ++z) {
    for (uint32_t x = 0; x < alpha; ++x) {
      uint8_t d = delta(z, x);
      for (uint64_t pat = 0; pat < (uint64_t(1) << d); ++pat) {
        std::string key = std::to_string(z) + "," + std::to_string(x) + ",";
        for (unsigned b = d; b-- > 0;) key.push_back((pat >> b) & 1 ? '1' : '0');
        fobj[key] = out_alphabet[f(z, x, pat)].to_string();
      }
    }
  }
  j["f"] = fobj;
  return j;
}

EncrypterSpec EncrypterSpec::from_json(const nlohmann::json& j) {
  EncrypterSpec spec;
  try {
    spec.name = j.value("name", "");
    spec.alpha = j.at("alpha").get<uint32_t>();
    spec.num_states = j.at("s").get<uint32_t>();
    spec.initial_state = j.value("z_star", 0u);
    for (const auto& y : j.at("out_alphabet")) {
      spec.out_alphabet.push_back(Bitstring::from_string(y.get<std::string>()));
    }
    size_t cells = size_t(spec.num_states) * spec.alpha;
    spec.key_bits.assign(cells, 0);
    spec.next_state.assign(cells, 0);
    const auto& dj = j.at("delta");
    const auto& gj = j.at("g");
    if (dj.size() != spec.num_states || gj.size() != spec.num_states) {
      fail(Errc::bad_spec, "delta/g must have one row per state");
    }
    for (uint32_t z = 0; z < spec.num_states; ++z) {
      if (dj[z].size() != spec.alpha || gj[z].size() != spec.alpha) {
        fail(Errc::bad_spec, "delta/g rows must have one entry per symbol");
      }
      for (uint32_t x = 0; x < spec.alpha; ++x) {
        spec.key_bits[spec.cell(z, x)] = dj[z][x].get<uint8_t>();
        spec.next_state[spec.cell(z, x)] = gj[z][x].get<uint32_t>();
      }
    }
    std::map<std::string, uint32_t> out_index;
    for (uint32_t i = 0; i < spec.out_alphabet.size(); ++i) {
      out_index[spec.out_alphabet[i].to_string()] = i;
    }
    spec.output.assign(cells, {});
    for (size_t i = 0; i < cells; ++i) {
      spec.output[i].assign(uint64_t(1) << spec.key_bits[i], UINT32_MAX);
    }
    for (const auto& [key, value] : j.at("f").items()) {
      size_t p1 = key.find(',');
      size_t p2 = key.find(',', p1 == std::string::npos ? p1 : p1 + 1);
      if (p1 == std::string::npos || p2 == std::string::npos) {
        fail(Errc::bad_spec, "f key must be \"z,x,keypattern\": " + key);
      }
      uint32_t z = uint32_t(std::stoul(key.substr(0, p1)));
      uint32_t x = uint32_t(std::stoul(key.substr(p1 + 1, p2 - p1 - 1)));
      std::string pat = key.substr(p2 + 1);
      if (z >= spec.num_states || x >= spec.alpha) {
        fail(Errc::bad_spec, "f key out of range: " + key);
      }
      uint8_t d = spec.key_bits[spec.cell(z, x)];
      if (pat.size() != d) {
        fail(Errc::bad_spec, "f key pattern length must equal delta(z,x): " + key);
      }
      uint64_t idx = 0;
      for (char c : pat) {
        if (c != '0' && c != '1') fail(Errc::bad_spec, "f key pattern must be binary");
        idx = (idx << 1) | uint64_t(c == '1');
      }
      auto it = out_index.find(value.get<std::string>());
      if (it == out_index.end()) {
        fail(Errc::bad_spec, "f value not in out_alphabet: " + key);
      }
      spec.output[spec.cell(z, x)][idx] = it->second;
    }
    for (size_t i = 0; i < cells; ++i) {
      for (uint32_t y : spec.output[i]) {
        if (y == UINT32_MAX) fail(Errc::bad_spec, "f table has missing key patterns");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::bad_spec, std::string("spec JSON: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::vector<uint32_t> state_sequence(const EncrypterSpec& spec,
                                     const Sequence& x) {
  std::vector<uint32_t> states;
  states.reserve(x.size() + 1);
  uint32_t z = spec.initial_state;
  states.push_back(z);
  for (uint32_t s : x.symbols) {
    z = spec.g(z, s);
    states.push_back(z);
  }
  return states;
}

uint64_t key_demand(const EncrypterSpec& spec, const Sequence& x) {
  uint64_t t = 0;
  uint32_t z = spec.initial_state;
  for (uint32_t s : x.symbols) {
    t += spec.delta(z, s);
    z = spec.g(z, s);
  }
  return t;
}

Trace run(const EncrypterSpec& spec, const Sequence& x, const Bitstring& key) {
  x.validate();
  if (x.alpha != spec.alpha) fail(Errc::bad_sequence, "sequence alphabet != spec alphabet");
  Trace tr;
  tr.states.reserve(x.size() + 1);
  tr.key_offsets.reserve(x.size() + 1);
  tr.states.push_back(spec.initial_state);
  tr.key_offsets.push_back(0);
  uint64_t t = 0;
  uint32_t z = spec.initial_state;
  for (uint32_t s : x.symbols) {
    uint8_t d = spec.delta(z, s);
    if (t + d > key.size()) {
      fail(Errc::key_exhausted, "key stream exhausted at offset " + std::to_string(t));
    }
    Bitstring seg;
    uint64_t pattern = 0;
    for (uint8_t b = 0; b < d; ++b) {
      uint8_t bit = key[t + b];
      seg.push_back(bit);
      pattern = (pattern << 1) | bit;
    }
    tr.key_segments.push_back(std::move(seg));
    tr.outputs.push_back(spec.f(z, s, pattern));
    t += d;
    z = spec.g(z, s);
    tr.states.push_back(z);
    tr.key_offsets.push_back(t);
  }
  return tr;
}

double key_rate(const EncrypterSpec& spec, const Sequence& x) {
  if (x.symbols.empty()) fail(Errc::bad_sequence, "key rate needs a nonempty sequence");
  return double(key_demand(spec, x)) / double(x.size());
}

std::string stream_key(const EncrypterSpec& spec,
                       const std::vector<uint32_t>& outputs) {
  std::string s;
  for (uint32_t y : outputs) {
    s += spec.out_alphabet[y].to_string();
    s.push_back('.');
  }
  return s;
}

TypeClass empirical_joint(const EncrypterSpec& spec, const Sequence& x) {
  if (x.alpha != spec.alpha) fail(Errc::bad_sequence, "sequence alphabet != spec alphabet");
  TypeClass t;
  t.alpha = spec.alpha;
  t.num_states = spec.num_states;
  t.counts.assign(size_t(spec.alpha) * spec.num_states, 0);
  t.n = x.size();
  uint32_t z = spec.initial_state;
  for (uint32_t s : x.symbols) {
    ++t.counts[size_t(s) * spec.num_states + z];
    z = spec.g(z, s);
  }
  return t;
}

double key_rate_from_type(const EncrypterSpec& spec, const TypeClass& t) {
  uint64_t total = 0;
  for (uint32_t x = 0; x < t.alpha; ++x) {
    for (uint32_t z = 0; z < t.num_states; ++z) {
      total += t.count(x, z) * spec.delta(z, x);
    }
  }
  return double(total) / double(t.n);
}

namespace {

void check_enumeration_budget(uint32_t alpha, size_t n, uint64_t budget) {
  uint64_t space = pow_u64(alpha, uint32_t(n));
  if (space > budget) {
    fail(Errc::budget_exceeded, "alpha^n = " + std::to_string(space) +
                                    " exceeds budget " + std::to_string(budget));
  }
}

}  // namespace

std::vector<Sequence> type_class_members(const EncrypterSpec& spec,
                                         const TypeClass& t, uint64_t budget) {
  check_enumeration_budget(spec.alpha, t.n, budget);
  std::vector<Sequence> members;
  uint64_t space = pow_u64(spec.alpha, uint32_t(t.n));
  for (uint64_t idx = 0; idx < space; ++idx) {
    Sequence x = Sequence::from_index(idx, t.n, spec.alpha);
    if (empirical_joint(spec, x) == t) members.push_back(std::move(x));
  }
  return members;
}

TypeCensus count_type_classes(const EncrypterSpec& spec, size_t n,
                              uint64_t budget) {
  check_enumeration_budget(spec.alpha, n, budget);
  TypeCensus census;
  uint64_t space = pow_u64(spec.alpha, uint32_t(n));
  for (uint64_t idx = 0; idx < space; ++idx) {
    Sequence x = Sequence::from_index(idx, n, spec.alpha);
    ++census.sizes[empirical_joint(spec, x)];
  }
  return census;
}

std::map<TypeClass, std::vector<uint64_t>> members_by_class(
    const EncrypterSpec& spec, size_t n, uint64_t budget) {
  check_enumeration_budget(spec.alpha, n, budget);
  std::map<TypeClass, std::vector<uint64_t>> classes;
  uint64_t space = pow_u64(spec.alpha, uint32_t(n));
  for (uint64_t idx = 0; idx < space; ++idx) {
    Sequence x = Sequence::from_index(idx, n, spec.alpha);
    classes[empirical_joint(spec, x)].push_back(idx);
  }
  return classes;
}

const char* to_string(ILVerdict v) {
  switch (v) {
    case ILVerdict::IL: return "IL";
    case ILVerdict::notIL: return "notIL";
    case ILVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

// Collision search at one segment length. Returns true when two distinct
// input segments share (start state, consumed key, output vector, end state).
bool has_collision(const EncrypterSpec& spec, uint32_t seg_len,
                   uint64_t budget) {
  uint64_t space = pow_u64(spec.alpha, seg_len);
  for (uint32_t z0 = 0; z0 < spec.num_states; ++z0) {
    std::unordered_map<std::string, uint64_t> seen;
    uint64_t enumerated = 0;
    for (uint64_t idx = 0; idx < space; ++idx) {
      Sequence xs = Sequence::from_index(idx, seg_len, spec.alpha);
      // path data independent of keys
      uint64_t t = 0;
      uint32_t z = z0;
      std::vector<uint8_t> deltas(seg_len);
      std::vector<uint32_t> zs(seg_len);
      for (uint32_t i = 0; i < seg_len; ++i) {
        zs[i] = z;
        deltas[i] = spec.delta(z, xs.symbols[i]);
        t += deltas[i];
        z = spec.g(z, xs.symbols[i]);
      }
      if (t > 62) fail(Errc::budget_exceeded, "key demand too large to enumerate");
      enumerated += uint64_t(1) << t;
      if (enumerated > budget) {
        fail(Errc::budget_exceeded,
             "IL audit: (input, key) pairs exceed budget " + std::to_string(budget));
      }
      for (uint64_t key = 0; key < (uint64_t(1) << t); ++key) {
        std::string sig;
        sig.reserve(t + seg_len * 2 + 4);
        uint64_t off = 0;
        for (uint32_t i = 0; i < seg_len; ++i) {
          uint8_t d = deltas[i];
          uint64_t pat = d ? (key >> (t - off - d)) & ((uint64_t(1) << d) - 1) : 0;
          off += d;
          sig += spec.out_alphabet[spec.f(zs[i], xs.symbols[i], pat)].to_string();
          sig.push_back('.');
        }
        sig.push_back('|');
        for (uint64_t b = t; b-- > 0;) sig.push_back((key >> b) & 1 ? '1' : '0');
        sig.push_back('|');
        sig += std::to_string(z);
        auto [it, fresh] = seen.emplace(std::move(sig), idx);
        if (!fresh && it->second != idx) return true;
      }
    }
  }
  return false;
}

}  // namespace

ILReport is_information_lossless(const EncrypterSpec& spec, uint32_t horizon,
                                 uint64_t budget) {
  spec.validate();
  ILReport report;
  report.horizon = horizon;
  for (uint32_t m = 0; m <= horizon; ++m) {
    if (has_collision(spec, m + 1, budget)) report.colliding.push_back(m);
  }
  if (report.colliding.empty()) {
    report.verdict = ILVerdict::IL;
    report.m0 = 0;
    return report;
  }
  uint32_t last = report.colliding.back();
  if (last == horizon) {
    report.verdict = ILVerdict::notIL;
    return report;
  }
  bool prefix = report.colliding.size() == size_t(last) + 1;
  if (prefix) {
    report.verdict = ILVerdict::IL;
    report.m0 = last + 1;
  } else {
    report.verdict = ILVerdict::inconclusive;
  }
  return report;
}

}  // namespace maxleak::fse
