#include "maxleak/leakage.hpp"

#include <algorithm>
#include <map>

#include "maxleak/lz78.hpp"
#include "maxleak/scheme.hpp"

namespace maxleak::leakage {

void Channel::check_rows() const {
  if (rows.size() != inputs.size()) fail(Errc::bad_channel, "row/input count mismatch");
  for (size_t x = 0; x < rows.size(); ++x) {
    Dyadic sum;
    for (const auto& [y, p] : rows[x]) {
      if (y >= outputs.size()) fail(Errc::bad_channel, "output index out of range");
      sum += p;
    }
    if (!sum.is_one()) {
      fail(Errc::bad_channel,
           "row " + std::to_string(x) + " sums to " + sum.to_string());
    }
  }
}

const Dyadic* Channel::entry(size_t x, uint32_t y) const {
  const auto& row = rows[x];
  auto it = std::lower_bound(
      row.begin(), row.end(), y,
      [](const auto& cell, uint32_t key) { return cell.first < key; });
  if (it == row.end() || it->first != y) return nullptr;
  return &it->second;
}

Channel build_channel(
    uint32_t alpha, size_t n, bool full_space, std::vector<Sequence> inputs,
    std::vector<std::vector<std::pair<std::string, Dyadic>>> sparse_rows) {
  Channel ch;
  ch.alpha = alpha;
  ch.n = n;
  ch.full_input_space = full_space;
  ch.inputs = std::move(inputs);

  std::map<std::string, uint32_t> index;
  for (const auto& row : sparse_rows) {
    for (const auto& [y, p] : row) index.emplace(y, 0);
  }
  ch.outputs.reserve(index.size());
  for (auto& [y, idx] : index) {
    idx = uint32_t(ch.outputs.size());
    ch.outputs.push_back(y);
  }
  ch.rows.reserve(sparse_rows.size());
  for (auto& row : sparse_rows) {
    std::map<uint32_t, Dyadic> cells;
    for (auto& [y, p] : row) {
      auto [it, fresh] = cells.emplace(index.at(y), p);
      if (!fresh) it->second += p;
    }
    ch.rows.emplace_back(cells.begin(), cells.end());
  }
  ch.check_rows();
  return ch;
}

Channel induced_channel(const fse::EncrypterSpec& spec, size_t n,
                        uint64_t budget) {
  spec.validate();
  uint64_t space = pow_u64(spec.alpha, uint32_t(n));

  std::vector<Sequence> inputs;
  std::vector<uint64_t> demands;
  inputs.reserve(space);
  uint64_t cost = 0;
  for (uint64_t idx = 0; idx < space; ++idx) {
    Sequence x = Sequence::from_index(idx, n, spec.alpha);
    uint64_t t = fse::key_demand(spec, x);
    if (t > 62) fail(Errc::budget_exceeded, "key demand too large to enumerate");
    cost += uint64_t(1) << t;
    if (cost > budget) {
      fail(Errc::budget_exceeded,
           "channel enumeration exceeds budget " + std::to_string(budget));
    }
    demands.push_back(t);
    inputs.push_back(std::move(x));
  }

  std::vector<std::vector<std::pair<std::string, Dyadic>>> sparse(space);
  for (uint64_t idx = 0; idx < space; ++idx) {
    const Sequence& x = inputs[idx];
    uint64_t t = demands[idx];
    auto states = fse::state_sequence(spec, x);
    std::map<std::string, uint64_t> tally;
    for (uint64_t key = 0; key < (uint64_t(1) << t); ++key) {
      std::string sig;
      uint64_t off = 0;
      for (size_t i = 0; i < n; ++i) {
        uint8_t d = spec.delta(states[i], x.symbols[i]);
        uint64_t pat = d ? (key >> (t - off - d)) & ((uint64_t(1) << d) - 1) : 0;
        off += d;
        sig += spec.out_alphabet[spec.f(states[i], x.symbols[i], pat)].to_string();
        sig.push_back('.');
      }
      ++tally[sig];
    }
    for (auto& [sig, count] : tally) {
      sparse[idx].emplace_back(sig, Dyadic::scaled(mpz_class(count), t));
    }
  }
  return build_channel(spec.alpha, n, true, std::move(inputs), std::move(sparse));
}

LeakageReport maximal_leakage(const Channel& ch) {
  ch.check_rows();
  LeakageReport rep;
  rep.argmax.assign(ch.outputs.size(), 0);
  std::vector<Dyadic> colmax(ch.outputs.size());
  for (size_t x = 0; x < ch.rows.size(); ++x) {
    for (const auto& [y, p] : ch.rows[x]) {
      if (p > colmax[y]) {
        colmax[y] = p;
        rep.argmax[y] = uint32_t(x);
      }
    }
  }
  Dyadic sum;
  for (const Dyadic& m : colmax) sum += m;
  rep.sum_max = sum;
  rep.leakage_bits = sum.log2();
  if (ch.full_input_space) {
    GuessingIdentity gi = guessing_identity(ch);
    rep.has_guessing = true;
    rep.pc_informed = gi.pc_informed;
    rep.pc_blind = gi.pc_blind;
  }
  return rep;
}

GuessingIdentity guessing_identity(const Channel& ch) {
  if (!ch.full_input_space) {
    fail(Errc::bad_channel, "guessing identity needs the full input space");
  }
  uint64_t space = pow_u64(ch.alpha, uint32_t(ch.n));
  if (ch.inputs.size() != space) {
    fail(Errc::bad_channel, "input list does not cover the full space");
  }
  std::vector<Dyadic> colmax(ch.outputs.size());
  for (size_t x = 0; x < ch.rows.size(); ++x) {
    for (const auto& [y, p] : ch.rows[x]) {
      if (p > colmax[y]) colmax[y] = p;
    }
  }
  Dyadic sum;
  for (const Dyadic& m : colmax) sum += m;

  GuessingIdentity gi;
  mpz_class space_z(static_cast<unsigned long>(space));
  mpq_class denom(space_z);
  gi.pc_informed = sum.to_mpq() / denom;
  gi.pc_informed.canonicalize();
  gi.pc_blind = mpq_class(1) / denom;
  gi.pc_blind.canonicalize();
  gi.ratio = gi.pc_informed / gi.pc_blind;
  gi.ratio.canonicalize();
  return gi;
}

Channel scheme_channel(const scheme::SchemeConfig& cfg, size_t n,
                       uint64_t budget) {
  uint64_t space = pow_u64(cfg.alpha, uint32_t(n));
  std::vector<Sequence> inputs;
  std::vector<std::vector<std::pair<std::string, Dyadic>>> sparse(space);
  inputs.reserve(space);
  uint64_t cost = 0;
  for (uint64_t idx = 0; idx < space; ++idx) {
    Sequence x = Sequence::from_index(idx, n, cfg.alpha);
    Bitstring body = scheme::codeword(x, cfg);
    uint64_t m = scheme::encrypted_prefix(body.size(), n, cfg.lambda);
    if (m > 62) fail(Errc::budget_exceeded, "pad width too large to enumerate");
    cost += uint64_t(1) << m;
    if (cost > budget) {
      fail(Errc::budget_exceeded,
           "scheme channel enumeration exceeds budget " + std::to_string(budget));
    }
    // all 2^m pad masks are equiprobable and give distinct ciphertexts
    for (uint64_t mask = 0; mask < (uint64_t(1) << m); ++mask) {
      std::string sig;
      sig.reserve(body.size());
      for (uint64_t i = 0; i < body.size(); ++i) {
        uint8_t bit = body[i];
        if (i < m) bit ^= (mask >> (m - 1 - i)) & 1;
        sig.push_back(bit ? '1' : '0');
      }
      sparse[idx].emplace_back(std::move(sig), Dyadic::pow2_neg(m));
    }
    inputs.push_back(std::move(x));
  }
  return build_channel(cfg.alpha, n, true, std::move(inputs), std::move(sparse));
}

Channel merge_outputs(
    const Channel& ch,
    const std::function<std::string(const std::string&)>& f) {
  std::vector<std::vector<std::pair<std::string, Dyadic>>> sparse(
      ch.inputs.size());
  for (size_t x = 0; x < ch.rows.size(); ++x) {
    for (const auto& [y, p] : ch.rows[x]) {
      sparse[x].emplace_back(f(ch.outputs[y]), p);
    }
  }
  return build_channel(ch.alpha, ch.n, ch.full_input_space, ch.inputs,
                       std::move(sparse));
}

nlohmann::ordered_json Channel::to_json() const {
  nlohmann::ordered_json j;
  j["alpha"] = alpha;
  j["n"] = n;
  j["full_input_space"] = full_input_space;
  auto ins = nlohmann::ordered_json::array();
  for (const auto& x : inputs) ins.push_back(x.symbols);
  j["inputs"] = ins;
  j["outputs"] = outputs;
  auto rws = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& [y, p] : row) {
      r.push_back({{"y", y},
                   {"mantissa", p.mantissa().get_str()},
                   {"exponent", p.exponent()}});
    }
    rws.push_back(r);
  }
  j["rows"] = rws;
  return j;
}

Channel Channel::from_json(const nlohmann::json& j) {
  Channel ch;
  try {
    ch.alpha = j.at("alpha").get<uint32_t>();
    ch.n = j.at("n").get<size_t>();
    ch.full_input_space = j.at("full_input_space").get<bool>();
    for (const auto& xs : j.at("inputs")) {
      Sequence x;
      x.alpha = ch.alpha;
      x.symbols = xs.get<std::vector<uint32_t>>();
      ch.inputs.push_back(std::move(x));
    }
    ch.outputs = j.at("outputs").get<std::vector<std::string>>();
    for (const auto& row : j.at("rows")) {
      std::vector<std::pair<uint32_t, Dyadic>> r;
      for (const auto& cell : row) {
        mpz_class mant(cell.at("mantissa").get<std::string>());
        r.emplace_back(cell.at("y").get<uint32_t>(),
                       Dyadic::scaled(mant, cell.at("exponent").get<unsigned long>()));
      }
      ch.rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::bad_channel, std::string("channel JSON: ") + e.what());
  }
  ch.check_rows();
  return ch;
}

nlohmann::ordered_json LeakageReport::to_json() const {
  nlohmann::ordered_json j;
  j["leakage_bits"] = leakage_bits;
  j["sum_max"] = {{"mantissa", sum_max.mantissa().get_str()},
                  {"exponent", sum_max.exponent()}};
  j["argmax"] = argmax;
  if (has_guessing) {
    j["pc_informed"] = pc_informed.get_str();
    j["pc_blind"] = pc_blind.get_str();
    mpq_class ratio = pc_informed / pc_blind;
    ratio.canonicalize();
    j["ratio"] = ratio.get_str();
  }
  return j;
}

}  // namespace maxleak::leakage
