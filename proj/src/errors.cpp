#include "gpesym/errors.hpp"

namespace gpesym {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonOscillatoryRegime: return "NonOscillatoryRegime";
    case ErrorCode::EdgeLeak: return "EdgeLeak";
    case ErrorCode::SingularFit: return "SingularFit";
    case ErrorCode::OverflowRisk: return "OverflowRisk";
    case ErrorCode::Unstable: return "Unstable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Config: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace gpesym
