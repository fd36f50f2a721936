#pragma once

#include <stdexcept>
#include <string>

namespace parryword {

enum class ErrorCode {
    Parse,
    ParryConditionViolated,
    ZeroLeadDigit,
    AllZeroPeriod,
    BetaNotGreaterThanOne,
    NoConvergence,
    PrecisionExhausted,
    SimpleExpansion,
    InvalidSubstitution,
    LetterOutOfRange,
    NotProlongable,
    PrefixTooShort,
    BudgetExceeded,
    OutOfRange,
    NotLeftExtensions,
    PairNotCoextendable,
    AssumptionAViolated,
    SeedNotFound,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::ParryConditionViolated: return "ParryConditionViolated";
    case ErrorCode::ZeroLeadDigit: return "ZeroLeadDigit";
    case ErrorCode::AllZeroPeriod: return "AllZeroPeriod";
    case ErrorCode::BetaNotGreaterThanOne: return "BetaNotGreaterThanOne";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::SimpleExpansion: return "SimpleExpansion";
    case ErrorCode::InvalidSubstitution: return "InvalidSubstitution";
    case ErrorCode::LetterOutOfRange: return "LetterOutOfRange";
    case ErrorCode::NotProlongable: return "NotProlongable";
    case ErrorCode::PrefixTooShort: return "PrefixTooShort";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotLeftExtensions: return "NotLeftExtensions";
    case ErrorCode::PairNotCoextendable: return "PairNotCoextendable";
    case ErrorCode::AssumptionAViolated: return "AssumptionAViolated";
    case ErrorCode::SeedNotFound: return "SeedNotFound";
    }
    return "Unknown";
}

/// Domain error raised by every parryword operation. `detail()` carries an
/// integer payload where one is meaningful (the failing shift for
/// ParryConditionViolated, the offending letter for LetterOutOfRange).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, long detail = -1)
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code), detail_(detail) {}

    ErrorCode code() const noexcept { return code_; }
    long detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    long detail_;
};

} // namespace parryword
