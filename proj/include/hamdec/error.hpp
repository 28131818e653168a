#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hamdec {

enum class ErrorCode {
    SizeMismatch,
    ModeMismatch,
    IdenticalCycles,
    NotAPermutation,
    NotASubset,
    DegreeViolation,
    DirectedInput,
    UndirectedInput,
    InfeasibleForced,
    NotPerfect,
    TooLarge,
    TooSmallForDistinct,
    RetryBudgetExhausted,
    NoDiscordantPairs,
    InvalidParams,
    ParseError,
    ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every recoverable failure in the library is reported as an Error carrying
/// a code that tests and the CLI can dispatch on.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string & message);

    auto code() const noexcept -> ErrorCode { return code_; }

  private:
    ErrorCode code_;
};

} // namespace hamdec
