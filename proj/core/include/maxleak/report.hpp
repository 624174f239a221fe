#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxleak/bounds.hpp"
#include "maxleak/fse.hpp"
#include "maxleak/leakage.hpp"
#include "maxleak/scheme.hpp"
#include "maxleak/sequence.hpp"

namespace maxleak::report {

inline constexpr const char* kSchema = "maxleak/report/v1";

struct Options {
  uint64_t budget = fse::kDefaultBudget;
  unsigned jobs = 1;
};

struct Result {
  nlohmann::ordered_json body;
  bool ok = true;  // all asserted inequalities held
};

/// Runs fn(0..count-1) across jobs; results must be written into
/// index-addressed slots so the assembly is independent of scheduling.
void parallel_for(size_t count, unsigned jobs,
                  const std::function<void(size_t)>& fn);

nlohmann::ordered_json wrap(const std::string& command, Result r,
                            std::optional<uint64_t> seed);

Result codec_stats(const Sequence& x);
Result leakage_induced(const fse::EncrypterSpec& spec, size_t n,
                       const Options& opt);
Result leakage_scheme(const scheme::SchemeConfig& cfg, size_t n,
                      const Options& opt);
Result leakage_channel(const leakage::Channel& ch);
Result il_audit(const fse::EncrypterSpec& spec, uint32_t horizon,
                const Options& opt);
Result type_census(const fse::EncrypterSpec& spec, size_t n,
                   const std::optional<Sequence>& x, const Options& opt);
Result trace(const fse::EncrypterSpec& spec, const Sequence& x,
             scheme::KeySource& key);
/// Per-instance LZ-type audits (parallelized), optionally followed by the
/// channel-level converse-chain audit.
Result bounds_audit(const fse::EncrypterSpec& spec, size_t n,
                    const std::vector<Sequence>& instances, bool converse,
                    const Options& opt);

}  // namespace maxleak::report
