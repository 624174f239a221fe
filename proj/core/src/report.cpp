#include "maxleak/report.hpp"

#include <atomic>
#include <cmath>
#include <future>

#include "maxleak/lz78.hpp"

namespace maxleak::report {

void parallel_for(size_t count, unsigned jobs,
                  const std::function<void(size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::future<void>> futures;
  for (unsigned j = 0; j < jobs; ++j) {
    futures.push_back(std::async(std::launch::async, worker));
  }
  for (auto& f : futures) f.get();
}

nlohmann::ordered_json wrap(const std::string& command, Result r,
                            std::optional<uint64_t> seed) {
  nlohmann::ordered_json j;
  j["schema"] = kSchema;
  j["command"] = command;
  if (seed) j["seed"] = *seed;
  j["ok"] = r.ok;
  j["report"] = std::move(r.body);
  return j;
}

Result codec_stats(const Sequence& x) {
  Result r;
  lz78::PhraseParse p = lz78::parse(x);
  Bitstring body = lz78::encode_body(x);
  Bitstring capped = lz78::capped_encode_body(x);
  double bound = lz78::code_length_bound(p.phrase_count, x.alpha);
  r.body["n"] = x.size();
  r.body["alpha"] = x.alpha;
  r.body["phrases"] = p.phrase_count;
  r.body["last_incomplete"] = p.last_incomplete;
  r.body["body_bits"] = body.size();
  r.body["capped_body_bits"] = capped.size();
  r.body["code_length_bound"] = bound;
  r.body["rho_lz"] = lz78::lz_complexity(x);
  r.body["bits_per_symbol"] = double(body.size()) / double(x.size());
  r.ok = double(body.size()) <= bound &&
         capped.size() <= lz78::raw_bit_count(x.size(), x.alpha) + 1;
  r.body["within_bound"] = r.ok;
  return r;
}

Result leakage_induced(const fse::EncrypterSpec& spec, size_t n,
                       const Options& opt) {
  Result r;
  leakage::Channel ch = leakage::induced_channel(spec, n, opt.budget);
  leakage::LeakageReport lk = leakage::maximal_leakage(ch);
  r.body["spec"] = spec.name.empty() ? "unnamed" : spec.name;
  r.body["n"] = n;
  r.body["alpha"] = spec.alpha;
  r.body["states"] = spec.num_states;
  r.body["outputs"] = ch.outputs.size();
  r.body["leakage"] = lk.to_json();
  r.ok = lk.leakage_bits >= -bounds::kFloatSlack;
  return r;
}

Result leakage_scheme(const scheme::SchemeConfig& cfg, size_t n,
                      const Options& opt) {
  Result r;
  leakage::Channel ch = leakage::scheme_channel(cfg, n, opt.budget);
  leakage::LeakageReport lk = leakage::maximal_leakage(ch);
  uint64_t l_max = 0;
  for (const auto& x : ch.inputs) {
    l_max = std::max<uint64_t>(l_max, scheme::codeword(x, cfg).size());
  }
  double bound = scheme::leakage_upper_bound(n, cfg.lambda, l_max);
  r.body["scheme"] = "lz-otp";
  r.body["n"] = n;
  r.body["alpha"] = cfg.alpha;
  r.body["lambda"] = cfg.lambda.to_string();
  r.body["pad_to_max"] = cfg.pad_to_max;
  r.body["compressor"] =
      cfg.compressor == scheme::Compressor::raw ? "raw" : "capped-lz78";
  r.body["l_max"] = l_max;
  r.body["leakage"] = lk.to_json();
  r.body["upper_bound_bits"] = bound;
  r.ok = lk.leakage_bits <= bound + bounds::kFloatSlack;
  r.body["within_bound"] = r.ok;
  return r;
}

Result leakage_channel(const leakage::Channel& ch) {
  Result r;
  leakage::LeakageReport lk = leakage::maximal_leakage(ch);
  r.body["inputs"] = ch.inputs.size();
  r.body["outputs"] = ch.outputs.size();
  r.body["leakage"] = lk.to_json();
  r.ok = lk.leakage_bits >= -bounds::kFloatSlack;
  return r;
}

Result il_audit(const fse::EncrypterSpec& spec, uint32_t horizon,
                const Options& opt) {
  Result r;
  fse::ILReport il = fse::is_information_lossless(spec, horizon, opt.budget);
  r.body["spec"] = spec.name.empty() ? "unnamed" : spec.name;
  r.body["horizon"] = il.horizon;
  r.body["verdict"] = fse::to_string(il.verdict);
  if (il.m0) r.body["m0"] = *il.m0;
  r.body["colliding_lengths"] = il.colliding;
  r.ok = il.verdict != fse::ILVerdict::notIL;
  return r;
}

Result type_census(const fse::EncrypterSpec& spec, size_t n,
                   const std::optional<Sequence>& x, const Options& opt) {
  Result r;
  fse::TypeCensus census = fse::count_type_classes(spec, n, opt.budget);
  mpz_class cap;
  mpz_ui_pow_ui(cap.get_mpz_t(), n + 1,
                size_t(spec.alpha) * spec.num_states - 1);
  bool within = mpz_class(static_cast<unsigned long>(census.class_count())) <= cap;
  r.body["spec"] = spec.name.empty() ? "unnamed" : spec.name;
  r.body["n"] = n;
  r.body["class_count"] = census.class_count();
  r.body["class_count_bound"] = cap.get_str();
  r.body["within_bound"] = within;
  uint64_t total = 0;
  auto classes = nlohmann::ordered_json::array();
  for (const auto& [tc, size] : census.sizes) {
    nlohmann::ordered_json cj;
    cj["counts"] = tc.counts;
    cj["size"] = size;
    classes.push_back(std::move(cj));
    total += size;
  }
  r.body["classes"] = classes;
  bool partitions = total == pow_u64(spec.alpha, uint32_t(n));
  r.body["partitions_space"] = partitions;
  r.ok = within && partitions;
  if (x) {
    fse::TypeClass tc = fse::empirical_joint(spec, *x);
    auto members = fse::type_class_members(spec, tc, opt.budget);
    nlohmann::ordered_json xj;
    xj["x"] = x->to_letters();
    xj["counts"] = tc.counts;
    xj["size"] = members.size();
    auto names = nlohmann::ordered_json::array();
    for (size_t i = 0; i < members.size() && i < 64; ++i) {
      names.push_back(members[i].to_letters());
    }
    xj["members"] = names;
    xj["members_truncated"] = members.size() > 64;
    r.body["query"] = std::move(xj);
  }
  return r;
}

Result trace(const fse::EncrypterSpec& spec, const Sequence& x,
             scheme::KeySource& key) {
  Result r;
  Bitstring material = key.take(fse::key_demand(spec, x));
  fse::Trace tr = fse::run(spec, x, material);
  r.body["spec"] = spec.name.empty() ? "unnamed" : spec.name;
  r.body["n"] = x.size();
  r.body["states"] = tr.states;
  r.body["key_offsets"] = tr.key_offsets;
  auto segs = nlohmann::ordered_json::array();
  for (const auto& k : tr.key_segments) segs.push_back(k.to_string());
  r.body["key_segments"] = segs;
  auto outs = nlohmann::ordered_json::array();
  for (uint32_t y : tr.outputs) outs.push_back(spec.out_alphabet[y].to_string());
  r.body["outputs"] = outs;
  r.body["ciphertext_stream"] = fse::stream_key(spec, tr.outputs);
  r.body["sigma"] = double(tr.total_key_bits()) / double(x.size());
  return r;
}

Result bounds_audit(const fse::EncrypterSpec& spec, size_t n,
                    const std::vector<Sequence>& instances, bool converse,
                    const Options& opt) {
  Result r;
  r.body["spec"] = spec.name.empty() ? "unnamed" : spec.name;
  r.body["n"] = n;
  r.body["instances"] = instances.size();

  std::vector<nlohmann::ordered_json> per_instance(instances.size());
  std::vector<uint8_t> ok_flags(instances.size(), 0);
  parallel_for(instances.size(), opt.jobs, [&](size_t i) {
    bounds::LZTypeReport rep = bounds::lztype_check(spec, instances[i], opt.budget);
    nlohmann::ordered_json ij;
    ij["x"] = instances[i].to_letters();
    ij["type_class_size"] = rep.type_class_size;
    ij["factorial_log2"] = rep.factorial_log2;
    ij["factorial_le_type"] = rep.factorial_le_type;
    ij["stirling_chain"] = rep.stirling_chain;
    ij["entropy"] = rep.entropy.h;
    ij["entropy_bound"] = rep.entropy.bound;
    ij["entropy_holds"] = rep.entropy.holds;
    ij["lztype"] = rep.bound.to_json();
    per_instance[i] = std::move(ij);
    ok_flags[i] = rep.bound.holds && rep.factorial_le_type &&
                  rep.stirling_chain && rep.entropy.holds;
  });
  bool all_ok = true;
  auto arr = nlohmann::ordered_json::array();
  for (size_t i = 0; i < instances.size(); ++i) {
    all_ok = all_ok && ok_flags[i];
    arr.push_back(std::move(per_instance[i]));
  }
  r.body["lztype_audits"] = arr;

  if (converse) {
    bounds::ConverseReport t1 = bounds::converse_audit(spec, n, opt.budget);
    r.body["converse"] = t1.to_json();
    all_ok = all_ok && t1.all_ok;
  }
  r.ok = all_ok;
  r.body["all_hold"] = all_ok;
  return r;
}

}  // namespace maxleak::report
