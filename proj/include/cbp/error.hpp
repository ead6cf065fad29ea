#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cbp {

// Stable error codes. The numeric values are part of the CLI contract
// (they become process exit codes) and must not be renumbered.
enum class ErrorCode : int {
    UnknownInstance = 10,
    DomainRangeViolation = 11,
    UnknownVocabulary = 12,
    EmptySeparator = 20,
    EmptyNeedle = 21,
    IterationCap = 22,
    MalformedRule = 23,
    ParseError = 30,
    BrokenReference = 31,
    ValidationError = 32,
    UnknownRole = 33,
    UnknownAbstractService = 34,
    MalformedQuery = 40,
    NoDependencies = 50,
    UnknownGateway = 51,
    UnsupportedType = 52,
    IncompleteProcess = 53,
    IoError = 60,
    NotFound = 70,
    WrongStatus = 71,
};

constexpr std::string_view error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::UnknownInstance: return "UnknownInstance";
    case ErrorCode::DomainRangeViolation: return "DomainRangeViolation";
    case ErrorCode::UnknownVocabulary: return "UnknownVocabulary";
    case ErrorCode::EmptySeparator: return "EmptySeparator";
    case ErrorCode::EmptyNeedle: return "EmptyNeedle";
    case ErrorCode::IterationCap: return "IterationCap";
    case ErrorCode::MalformedRule: return "MalformedRule";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BrokenReference: return "BrokenReference";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownRole: return "UnknownRole";
    case ErrorCode::UnknownAbstractService: return "UnknownAbstractService";
    case ErrorCode::MalformedQuery: return "MalformedQuery";
    case ErrorCode::NoDependencies: return "NoDependencies";
    case ErrorCode::UnknownGateway: return "UnknownGateway";
    case ErrorCode::UnsupportedType: return "UnsupportedType";
    case ErrorCode::IncompleteProcess: return "IncompleteProcess";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::WrongStatus: return "WrongStatus";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace cbp
