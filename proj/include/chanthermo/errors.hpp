#pragma once

#include <stdexcept>
#include <string>

namespace chanthermo {

enum class ErrorCode {
    // construction / validation
    NonSquare,
    NegativeEntry,
    RowSumViolation,
    DimensionMismatch,
    SupportViolation,
    OutOfRange,
    InvalidParams,
    InvalidPerturbation,
    InvalidInput,
    StepOutOfRange,
    MissingPStar,
    // numeric failures
    NoConvergence,
    SingularChannel,
    NotApplicable,
    ZeroEntry,
    NonUniqueInvariant,
    NotFound,
    ZeroInvariantMass,
    NotInvariant,
    DegenerateDistribution,
    InfiniteTimescale,
    NonPositiveBeta,
    AllCellsFailed,
    SingularNeighborhood,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NonSquare: return "NonSquare";
        case ErrorCode::NegativeEntry: return "NegativeEntry";
        case ErrorCode::RowSumViolation: return "RowSumViolation";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::SupportViolation: return "SupportViolation";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::InvalidPerturbation: return "InvalidPerturbation";
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::StepOutOfRange: return "StepOutOfRange";
        case ErrorCode::MissingPStar: return "MissingPStar";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::SingularChannel: return "SingularChannel";
        case ErrorCode::NotApplicable: return "NotApplicable";
        case ErrorCode::ZeroEntry: return "ZeroEntry";
        case ErrorCode::NonUniqueInvariant: return "NonUniqueInvariant";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::ZeroInvariantMass: return "ZeroInvariantMass";
        case ErrorCode::NotInvariant: return "NotInvariant";
        case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
        case ErrorCode::InfiniteTimescale: return "InfiniteTimescale";
        case ErrorCode::NonPositiveBeta: return "NonPositiveBeta";
        case ErrorCode::AllCellsFailed: return "AllCellsFailed";
        case ErrorCode::SingularNeighborhood: return "SingularNeighborhood";
    }
    return "Unknown";
}

/// Validation errors map to CLI exit code 2, numeric failures to exit code 1.
inline bool is_validation_error(ErrorCode c) {
    switch (c) {
        case ErrorCode::NonSquare:
        case ErrorCode::NegativeEntry:
        case ErrorCode::RowSumViolation:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::SupportViolation:
        case ErrorCode::OutOfRange:
        case ErrorCode::InvalidParams:
        case ErrorCode::InvalidPerturbation:
        case ErrorCode::InvalidInput:
        case ErrorCode::StepOutOfRange:
        case ErrorCode::MissingPStar:
            return true;
        default:
            return false;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    const char* code_name() const noexcept { return error_code_name(code_); }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

} // namespace chanthermo
