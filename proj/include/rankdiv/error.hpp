#pragma once

#include <stdexcept>
#include <string>

namespace rankdiv {

enum class ErrorKind {
    NotPrime,
    NotIrreducible,
    NotMonic,
    FieldMismatch,
    BadSubfieldSize,
    AmbientMismatch,
    DimensionMismatch,
    NotABasis,
    NotInvertible,
    BadDivisor,
    ArityMismatch,
    TooLarge,
    ZeroCode,
    ConjugationFailed,
    SearchSpaceTooLarge,
    DegenerateCode,
    ZeroVector,
    DegenerateForm,
    TooFewPoints,
    TheoremViolation,
    NoInvertibleElement,
    WrongDimension,
    CommonKernelNonzero,
    SearchBudgetExceeded,
    NotFqmLinear,
    QTooSmallForRectCase,
    NotSquare,
    BadParams,
    ParseError,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotPrime: return "NotPrime";
        case ErrorKind::NotIrreducible: return "NotIrreducible";
        case ErrorKind::NotMonic: return "NotMonic";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::BadSubfieldSize: return "BadSubfieldSize";
        case ErrorKind::AmbientMismatch: return "AmbientMismatch";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NotABasis: return "NotABasis";
        case ErrorKind::NotInvertible: return "NotInvertible";
        case ErrorKind::BadDivisor: return "BadDivisor";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::ZeroCode: return "ZeroCode";
        case ErrorKind::ConjugationFailed: return "ConjugationFailed";
        case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
        case ErrorKind::DegenerateCode: return "DegenerateCode";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::DegenerateForm: return "DegenerateForm";
        case ErrorKind::TooFewPoints: return "TooFewPoints";
        case ErrorKind::TheoremViolation: return "TheoremViolation";
        case ErrorKind::NoInvertibleElement: return "NoInvertibleElement";
        case ErrorKind::WrongDimension: return "WrongDimension";
        case ErrorKind::CommonKernelNonzero: return "CommonKernelNonzero";
        case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
        case ErrorKind::NotFqmLinear: return "NotFqmLinear";
        case ErrorKind::QTooSmallForRectCase: return "QTooSmallForRectCase";
        case ErrorKind::NotSquare: return "NotSquare";
        case ErrorKind::BadParams: return "BadParams";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace rankdiv
