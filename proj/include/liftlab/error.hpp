#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace liftlab {

enum class ErrorCode {
  invalid_parameter,
  generation_failure,
  numerical_failure,
  matching_failure,
  characterization_violation,
  size_limit,
  search_failure,
  parse_error,
  validation_error,
  io_error,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::generation_failure: return "generation-failure";
    case ErrorCode::numerical_failure: return "numerical-failure";
    case ErrorCode::matching_failure: return "matching-failure";
    case ErrorCode::characterization_violation: return "characterization-violation";
    case ErrorCode::size_limit: return "size-limit";
    case ErrorCode::search_failure: return "search-failure";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::validation_error: return "validation-error";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown";
}

// Every failure raised by the library carries one of the codes above; the CLI
// maps codes onto process exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace detail
}  // namespace liftlab
