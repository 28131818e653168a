#include "hamdec/error.hpp"

namespace hamdec {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::IdenticalCycles: return "IdenticalCycles";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::NotASubset: return "NotASubset";
    case ErrorCode::DegreeViolation: return "DegreeViolation";
    case ErrorCode::DirectedInput: return "DirectedInput";
    case ErrorCode::UndirectedInput: return "UndirectedInput";
    case ErrorCode::InfeasibleForced: return "InfeasibleForced";
    case ErrorCode::NotPerfect: return "NotPerfect";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::TooSmallForDistinct: return "TooSmallForDistinct";
    case ErrorCode::RetryBudgetExhausted: return "RetryBudgetExhausted";
    case ErrorCode::NoDiscordantPairs: return "NoDiscordantPairs";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string & message) :
    std::runtime_error(std::string(to_string(code)) + ": " + message),
    code_(code)
{
}

} // namespace hamdec
