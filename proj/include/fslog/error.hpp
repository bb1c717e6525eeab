#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fslog {

enum class ErrorCode {
  NotSharp,
  ScaleExceeded,
  MalformedGraph,
  InconsistentGraph,
  RelationViolated,
  ImageEscapes,
  IncompatibleData,
  InconsistentContacts,
  IndexOutOfRange,
  DimensionMismatch,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSharp: return "NotSharp";
    case ErrorCode::ScaleExceeded: return "ScaleExceeded";
    case ErrorCode::MalformedGraph: return "MalformedGraph";
    case ErrorCode::InconsistentGraph: return "InconsistentGraph";
    case ErrorCode::RelationViolated: return "RelationViolated";
    case ErrorCode::ImageEscapes: return "ImageEscapes";
    case ErrorCode::IncompatibleData: return "IncompatibleData";
    case ErrorCode::InconsistentContacts: return "InconsistentContacts";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

// Domain error raised by library operations. Callers that need to branch on
// the failure kind inspect code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string const& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  std::string const& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace fslog
