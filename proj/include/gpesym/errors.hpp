#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gpesym {

enum class ErrorCode {
  NonOscillatoryRegime,
  EdgeLeak,
  SingularFit,
  OverflowRisk,
  Unstable,
  InvalidArgument,
  Config,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to an exit status or a sweep row.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace gpesym
