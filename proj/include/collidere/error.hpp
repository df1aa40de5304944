#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace collidere {

// Machine-readable error codes. Every throwing operation documents which of
// these it may raise; the CLI maps them onto the diagnostic stream.
enum class ErrorCode {
    TooFewBranches,
    NonPositiveWeight,
    IncompleteGraph,
    UltrametricViolation,
    SubsetTooSmall,
    NotAnEmbedding,
    WeightUnderflow,
    SingularBranchType,
    UnknownName,
    DeltaMismatch,
    InvalidHint,
    CriterionFailed,
    SyntaxError,
    IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::vector<long long> args = {})
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code),
          args_(std::move(args)) {}

    ErrorCode code() const { return code_; }

    // Structured payload, e.g. the violating triple {i, j, k} for
    // UltrametricViolation or the offset of a parse error.
    const std::vector<long long>& args() const { return args_; }

private:
    ErrorCode code_;
    std::vector<long long> args_;
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::TooFewBranches: return "TooFewBranches";
        case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
        case ErrorCode::IncompleteGraph: return "IncompleteGraph";
        case ErrorCode::UltrametricViolation: return "UltrametricViolation";
        case ErrorCode::SubsetTooSmall: return "SubsetTooSmall";
        case ErrorCode::NotAnEmbedding: return "NotAnEmbedding";
        case ErrorCode::WeightUnderflow: return "WeightUnderflow";
        case ErrorCode::SingularBranchType: return "SingularBranchType";
        case ErrorCode::UnknownName: return "UnknownName";
        case ErrorCode::DeltaMismatch: return "DeltaMismatch";
        case ErrorCode::InvalidHint: return "InvalidHint";
        case ErrorCode::CriterionFailed: return "CriterionFailed";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

}  // namespace collidere
