// maxleak: compress, encrypt, and audit individual sequences under the
// maximal-leakage metric. Every command emits a JSON report (stdout or
// --json <path>). Exit codes: 0 all asserted inequalities hold, 1 an
// assertion failed or an error occurred, 2 an enumeration budget was hit.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "maxleak/bounds.hpp"
#include "maxleak/fse.hpp"
#include "maxleak/leakage.hpp"
#include "maxleak/lz78.hpp"
#include "maxleak/presets.hpp"
#include "maxleak/report.hpp"
#include "maxleak/scheme.hpp"

using namespace maxleak;

namespace {

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_failure, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_failure, "cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            std::streamsize(bytes.size()));
}

// Bytes to alphabet indices: letters map to 0..25, digits to their value,
// whitespace is skipped, anything else is its raw byte value. Values at or
// above alpha are rejected unless --mod folds them.
Sequence ingest(const std::vector<uint8_t>& bytes, uint32_t alpha, bool mod) {
  Sequence x;
  x.alpha = alpha;
  for (uint8_t b : bytes) {
    if (b == ' ' || b == '\n' || b == '\r' || b == '\t') continue;
    uint32_t v;
    if (b >= 'a' && b <= 'z') v = b - 'a';
    else if (b >= 'A' && b <= 'Z') v = b - 'A';
    else if (b >= '0' && b <= '9') v = b - '0';
    else v = b;
    if (v >= alpha) {
      if (!mod) {
        fail(Errc::bad_sequence,
             "byte value " + std::to_string(v) + " outside alphabet of size " +
                 std::to_string(alpha) + " (use --mod to fold)");
      }
      v %= alpha;
    }
    x.symbols.push_back(v);
  }
  if (x.symbols.empty()) fail(Errc::bad_sequence, "input file has no usable symbols");
  return x;
}

std::vector<uint8_t> emit_symbols(const Sequence& x) {
  std::vector<uint8_t> bytes;
  bytes.reserve(x.size());
  for (uint32_t v : x.symbols) {
    bytes.push_back(x.alpha <= 26 ? uint8_t('a' + v) : uint8_t(v));
  }
  return bytes;
}

nlohmann::ordered_json input_stats(const std::string& path, const Sequence& x) {
  nlohmann::ordered_json j;
  j["path"] = path;
  j["n"] = x.size();
  j["alpha"] = x.alpha;
  std::vector<uint64_t> hist(x.alpha, 0);
  for (uint32_t v : x.symbols) ++hist[v];
  j["histogram"] = hist;
  return j;
}

uint64_t env_budget() {
  if (const char* s = std::getenv("MAXLEAK_BUDGET")) {
    return std::strtoull(s, nullptr, 10);
  }
  return fse::kDefaultBudget;
}

struct Emitter {
  std::string json_path;
  std::optional<uint64_t> seed;

  int finish(const std::string& command, report::Result r) const {
    auto j = report::wrap(command, std::move(r), seed);
    bool ok = j["ok"].get<bool>();
    if (json_path.empty()) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::ofstream out(json_path);
      if (!out) fail(Errc::io_failure, "cannot open " + json_path);
      out << j.dump(2) << "\n";
    }
    return ok ? 0 : 1;
  }
};

fse::EncrypterSpec load_spec(const std::string& spec_path,
                             const std::string& preset) {
  if (!preset.empty()) return presets::by_name(preset);
  auto bytes = read_file(spec_path);
  auto j = nlohmann::json::parse(bytes.begin(), bytes.end(), nullptr, false);
  if (j.is_discarded()) fail(Errc::bad_spec, "spec file is not valid JSON");
  return fse::EncrypterSpec::from_json(j);
}

scheme::KeySource make_key(const std::string& key_path,
                           std::optional<uint64_t> seed) {
  if (!key_path.empty()) return scheme::KeySource::from_bytes(read_file(key_path));
  if (seed) return scheme::KeySource::seeded(*seed);
  fail(Errc::key_exhausted, "provide --key <file> or --seed <n>");
}

report::Result selftest(const report::Options& opt) {
  report::Result res;
  auto checks = nlohmann::ordered_json::array();
  bool all = true;
  auto check = [&](const std::string& name, bool ok) {
    checks.push_back({{"name", name}, {"ok", ok}});
    all = all && ok;
  };

  {
    Sequence x = Sequence::from_letters("abbabaabbaaabaa", 2);
    check("parse example c=8", lz78::parse(x).phrase_count == 8);
  }
  {
    bool ok = true;
    for (size_t n = 1; n <= 8 && ok; ++n) {
      for (uint64_t idx = 0; idx < (uint64_t(1) << n) && ok; ++idx) {
        Sequence x = Sequence::from_index(idx, n, 2);
        Bitstring body = lz78::encode_body(x);
        uint64_t c = lz78::parse(x).phrase_count;
        ok = lz78::decode_body(body, 2, n) == x &&
             double(body.size()) <= lz78::code_length_bound(c, 2) &&
             lz78::capped_decode_body(lz78::capped_encode_body(x), 2, n) == x;
      }
    }
    check("codec round trip n<=8 with bounds", ok);
  }
  {
    auto pad = leakage::maximal_leakage(
        leakage::induced_channel(presets::xor_machine(), 3, opt.budget));
    auto half = leakage::maximal_leakage(
        leakage::induced_channel(presets::half_pad_machine(), 2, opt.budget));
    check("leakage oracle exact values",
          pad.sum_max.is_one() && half.leakage_bits == 1.0);
  }
  {
    bool ok = true;
    for (const auto& name : {"xor", "toggle", "half-pad"}) {
      auto spec = presets::by_name(name);
      for (size_t n = 1; n <= 4; ++n) {
        auto ch = leakage::induced_channel(spec, n, opt.budget);
        auto gi = leakage::guessing_identity(ch);
        ok = ok && gi.ratio == leakage::maximal_leakage(ch).sum_max.to_mpq();
      }
    }
    check("guessing identity", ok);
  }
  {
    scheme::SchemeConfig padded{scheme::Rational{0, 1}, 2,
                                scheme::Compressor::capped_lz78, true};
    auto rep = leakage::maximal_leakage(
        leakage::scheme_channel(padded, 6, opt.budget));
    scheme::SchemeConfig halfl{scheme::Rational{1, 2}, 2,
                               scheme::Compressor::capped_lz78, false};
    auto r2 = report::leakage_scheme(halfl, 6, opt);
    check("scheme leakage", rep.leakage_bits == 0.0 && r2.ok);
  }
  {
    bool ok = true;
    for (const auto& name : {"xor", "toggle"}) {
      auto spec = presets::by_name(name);
      for (size_t n = 1; n <= 8 && ok; ++n) {
        auto classes = fse::members_by_class(spec, n, opt.budget);
        for (const auto& [tclass, members] : classes) {
          mpz_class size(static_cast<unsigned long>(members.size()));
          for (uint64_t idx : members) {
            Sequence x = Sequence::from_index(idx, n, 2);
            auto psc = bounds::phrase_state_counts(spec, x);
            double lhs = std::log2(double(members.size())) / double(n);
            double rhs = lz78::lz_complexity(x) -
                         bounds::delta_s(n, psc.phrase_count, spec.num_states);
            ok = ok && bounds::permutation_product(psc) <= size &&
                 bounds::entropy_term(psc).holds &&
                 lhs >= rhs - bounds::kFloatSlack;
          }
        }
      }
    }
    check("permutation-entropy chain n<=8", ok);
  }
  {
    auto xr = bounds::converse_audit(presets::xor_machine(), 4, opt.budget);
    auto tr = bounds::converse_audit(presets::toggle_machine(), 4, opt.budget);
    check("converse chain audit", xr.all_ok && tr.all_ok);
  }

  res.body["checks"] = checks;
  res.ok = all;
  return res;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"universal encryption of individual sequences under maximal leakage"};
  app.require_subcommand(1);

  std::string in_path, out_path, json_path, spec_path, preset, key_path;
  std::string x_letters, lambda_str = "0", compressor_str = "capped-lz78";
  std::string scheme_name, channel_path, dump_channel;
  uint32_t alpha = 2;
  size_t n = 0;
  uint32_t horizon = 12;
  bool mod = false, pad = false, all_x = false, converse = false;
  unsigned jobs = 1;
  uint64_t budget = env_budget();
  std::optional<uint64_t> seed;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--json", json_path, "write the report to this path");
    cmd->add_option("--budget", budget,
                    "enumeration budget (default MAXLEAK_BUDGET or 2^24)");
  };

  auto* compress = app.add_subcommand("compress", "LZ78-compress a file");
  compress->add_option("--in", in_path, "input file")->required();
  compress->add_option("--out", out_path, "output file (default <in>.mlz)");
  compress->add_option("--alpha", alpha, "alphabet size (2..255)")->required();
  compress->add_flag("--mod", mod, "fold out-of-alphabet bytes");
  add_common(compress);

  auto* decompress = app.add_subcommand("decompress", "invert compress");
  decompress->add_option("--in", in_path, "compressed file")->required();
  decompress->add_option("--out", out_path, "output file (default <in>.out)");
  add_common(decompress);

  auto* encrypt = app.add_subcommand(
      "encrypt", "capped-LZ78 compress, then one-time-pad the prefix");
  encrypt->add_option("--in", in_path)->required();
  encrypt->add_option("--out", out_path, "ciphertext file (default <in>.mlc)");
  encrypt->add_option("--alpha", alpha)->required();
  encrypt->add_option("--lambda", lambda_str, "allowed leakage rate p/q");
  encrypt->add_option("--key", key_path, "key file (bytes, consumed MSB-first)");
  encrypt->add_option("--seed", seed, "PRNG key seed (experiments only)");
  encrypt->add_option("--compressor", compressor_str, "capped-lz78 | raw");
  encrypt->add_flag("--pad", pad, "pad codewords to the worst-case cap");
  encrypt->add_flag("--mod", mod);
  add_common(encrypt);

  auto* decrypt = app.add_subcommand("decrypt", "invert encrypt");
  decrypt->add_option("--in", in_path)->required();
  decrypt->add_option("--out", out_path, "plaintext file (default <in>.out)");
  decrypt->add_option("--key", key_path);
  decrypt->add_option("--seed", seed);
  add_common(decrypt);

  auto* fse_cmd = app.add_subcommand("fse", "finite-state encrypter tools");
  fse_cmd->require_subcommand(1);
  auto* fse_run = fse_cmd->add_subcommand("run", "trace an encrypter on an input");
  fse_run->add_option("--spec", spec_path, "encrypter spec JSON");
  fse_run->add_option("--preset", preset, "built-in machine")->excludes("--spec");
  fse_run->add_option("--x", x_letters, "input as letters, e.g. abba");
  fse_run->add_option("--in", in_path, "input file");
  fse_run->add_option("--key", key_path);
  fse_run->add_option("--seed", seed);
  fse_run->add_flag("--mod", mod);
  add_common(fse_run);

  auto* fse_il = fse_cmd->add_subcommand("audit-il", "information-losslessness audit");
  fse_il->add_option("--spec", spec_path);
  fse_il->add_option("--preset", preset)->excludes("--spec");
  fse_il->add_option("--horizon", horizon, "max segment length - 1 (default 12)");
  add_common(fse_il);

  auto* fse_types = fse_cmd->add_subcommand("types", "type-class census");
  fse_types->add_option("--spec", spec_path);
  fse_types->add_option("--preset", preset)->excludes("--spec");
  fse_types->add_option("--n", n, "sequence length")->required();
  fse_types->add_option("--x", x_letters, "also report this sequence's class");
  add_common(fse_types);

  auto* leak = app.add_subcommand("leakage", "exact maximal-leakage oracle");
  leak->add_option("--spec", spec_path);
  leak->add_option("--preset", preset)->excludes("--spec");
  leak->add_option("--scheme", scheme_name, "lz-otp: audit the OTP scheme");
  leak->add_option("--channel", channel_path, "read a dumped channel JSON");
  leak->add_option("--n", n, "sequence length");
  leak->add_option("--alpha", alpha);
  leak->add_option("--lambda", lambda_str);
  leak->add_option("--compressor", compressor_str);
  leak->add_flag("--pad", pad);
  leak->add_option("--dump-channel", dump_channel, "write the channel JSON here");
  add_common(leak);

  auto* bounds_cmd = app.add_subcommand("bounds", "converse-bound audits");
  auto* bounds_audit = bounds_cmd->add_subcommand("audit", "LZ-type and converse-chain audits");
  bounds_audit->add_option("--spec", spec_path);
  bounds_audit->add_option("--preset", preset)->excludes("--spec");
  bounds_audit->add_option("--n", n)->required();
  bounds_audit->add_flag("--all-x", all_x, "audit every sequence of length n");
  bounds_audit->add_option("--x", x_letters, "audit a single sequence");
  bounds_audit->add_flag("--converse", converse, "also run the channel-level converse-chain audit");
  bounds_audit->add_option("--jobs", jobs, "parallel workers for the sweep");
  add_common(bounds_audit);

  auto* self = app.add_subcommand("selftest", "quick end-to-end checks");
  add_common(self);

  CLI11_PARSE(app, argc, argv);

  report::Options opt{budget, jobs};
  Emitter emit{json_path, seed};

  try {
    if (*compress) {
      Sequence x = ingest(read_file(in_path), alpha, mod);
      std::string dest = out_path.empty() ? in_path + ".mlz" : out_path;
      write_file(dest, lz78::compress(x));
      report::Result r = report::codec_stats(x);
      r.body["input"] = input_stats(in_path, x);
      r.body["output"] = dest;
      return emit.finish("compress", std::move(r));
    }
    if (*decompress) {
      Sequence x = lz78::decompress(read_file(in_path));
      std::string dest = out_path.empty() ? in_path + ".out" : out_path;
      write_file(dest, emit_symbols(x));
      report::Result r;
      r.body["n"] = x.size();
      r.body["alpha"] = x.alpha;
      r.body["output"] = dest;
      return emit.finish("decompress", std::move(r));
    }
    if (*encrypt) {
      Sequence x = ingest(read_file(in_path), alpha, mod);
      scheme::SchemeConfig cfg{scheme::Rational::parse(lambda_str), alpha,
                               compressor_str == "raw"
                                   ? scheme::Compressor::raw
                                   : scheme::Compressor::capped_lz78,
                               pad};
      scheme::KeySource key = make_key(key_path, seed);
      auto enc = scheme::encrypt(x, cfg, key);
      std::string dest = out_path.empty() ? in_path + ".mlc" : out_path;
      write_file(dest, scheme::to_cipher_file(enc, x.size(), cfg));
      report::Result r;
      r.body["input"] = input_stats(in_path, x);
      r.body["lambda"] = cfg.lambda.to_string();
      r.body["body_bits"] = enc.ciphertext.size();
      r.body["pad_bits"] = enc.pad_bits;
      r.body["sigma"] = double(enc.pad_bits) / double(x.size());
      r.body["key_bits_consumed"] = key.consumed();
      r.body["output"] = dest;
      return emit.finish("encrypt", std::move(r));
    }
    if (*decrypt) {
      scheme::CipherFile cf = scheme::from_cipher_file(read_file(in_path));
      scheme::KeySource key = make_key(key_path, seed);
      Sequence x = scheme::decrypt(cf.body, cf.n, cf.cfg, key);
      std::string dest = out_path.empty() ? in_path + ".out" : out_path;
      write_file(dest, emit_symbols(x));
      report::Result r;
      r.body["n"] = x.size();
      r.body["alpha"] = cf.cfg.alpha;
      r.body["lambda"] = cf.cfg.lambda.to_string();
      r.body["pad_bits"] = cf.pad_bits;
      r.body["output"] = dest;
      return emit.finish("decrypt", std::move(r));
    }
    if (*fse_run) {
      auto spec = load_spec(spec_path, preset);
      Sequence x = x_letters.empty()
                       ? ingest(read_file(in_path), spec.alpha, mod)
                       : Sequence::from_letters(x_letters, spec.alpha);
      scheme::KeySource key = make_key(key_path, seed);
      return emit.finish("fse run", report::trace(spec, x, key));
    }
    if (*fse_il) {
      auto spec = load_spec(spec_path, preset);
      return emit.finish("fse audit-il", report::il_audit(spec, horizon, opt));
    }
    if (*fse_types) {
      auto spec = load_spec(spec_path, preset);
      std::optional<Sequence> x;
      if (!x_letters.empty()) x = Sequence::from_letters(x_letters, spec.alpha);
      return emit.finish("fse types", report::type_census(spec, n, x, opt));
    }
    if (*leak) {
      if (!channel_path.empty()) {
        auto bytes = read_file(channel_path);
        auto j = nlohmann::json::parse(bytes.begin(), bytes.end());
        return emit.finish("leakage",
                           report::leakage_channel(leakage::Channel::from_json(j)));
      }
      if (!scheme_name.empty()) {
        if (scheme_name != "lz-otp") fail(Errc::bad_spec, "unknown scheme " + scheme_name);
        if (n == 0) fail(Errc::bad_spec, "--n is required");
        scheme::SchemeConfig cfg{scheme::Rational::parse(lambda_str), alpha,
                                 compressor_str == "raw"
                                     ? scheme::Compressor::raw
                                     : scheme::Compressor::capped_lz78,
                                 pad};
        if (!dump_channel.empty()) {
          auto ch = leakage::scheme_channel(cfg, n, opt.budget);
          std::ofstream out(dump_channel);
          out << ch.to_json().dump(2) << "\n";
        }
        return emit.finish("leakage", report::leakage_scheme(cfg, n, opt));
      }
      auto spec = load_spec(spec_path, preset);
      if (n == 0) fail(Errc::bad_spec, "--n is required");
      if (!dump_channel.empty()) {
        auto ch = leakage::induced_channel(spec, n, opt.budget);
        std::ofstream out(dump_channel);
        out << ch.to_json().dump(2) << "\n";
      }
      return emit.finish("leakage", report::leakage_induced(spec, n, opt));
    }
    if (*bounds_audit) {
      auto spec = load_spec(spec_path, preset);
      std::vector<Sequence> instances;
      if (all_x) {
        uint64_t space = pow_u64(spec.alpha, uint32_t(n));
        if (space > opt.budget) {
          fail(Errc::budget_exceeded, "alpha^n exceeds budget; raise --budget");
        }
        for (uint64_t idx = 0; idx < space; ++idx) {
          instances.push_back(Sequence::from_index(idx, n, spec.alpha));
        }
      } else if (!x_letters.empty()) {
        Sequence x = Sequence::from_letters(x_letters, spec.alpha);
        if (x.size() != n) fail(Errc::bad_sequence, "--x length must equal --n");
        instances.push_back(std::move(x));
      } else {
        fail(Errc::bad_sequence, "pass --all-x or --x <sequence>");
      }
      return emit.finish(
          "bounds audit",
          report::bounds_audit(spec, n, instances, converse, opt));
    }
    if (*self) {
      return emit.finish("selftest", selftest(opt));
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return e.code() == Errc::budget_exceeded ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
