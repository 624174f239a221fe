#pragma once

#include <stdexcept>
#include <string>

namespace maxleak {

enum class Errc {
  malformed_header,
  pointer_out_of_range,
  truncated,
  bad_sequence,
  bad_spec,
  bad_channel,
  key_exhausted,
  budget_exceeded,
  io_failure,
};

const char* to_string(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

inline const char* to_string(Errc c) {
  switch (c) {
    case Errc::malformed_header: return "malformed_header";
    case Errc::pointer_out_of_range: return "pointer_out_of_range";
    case Errc::truncated: return "truncated";
    case Errc::bad_sequence: return "bad_sequence";
    case Errc::bad_spec: return "bad_spec";
    case Errc::bad_channel: return "bad_channel";
    case Errc::key_exhausted: return "key_exhausted";
    case Errc::budget_exceeded: return "budget_exceeded";
    case Errc::io_failure: return "io_failure";
  }
  return "unknown";
}

}  // namespace maxleak
