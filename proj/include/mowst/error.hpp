#ifndef MOWST_ERROR_HPP
#define MOWST_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mowst {

/// Error categories surfaced by the library. The CLI maps ConfigError to
/// exit code 2 and DataError/ParseError to exit code 3; everything else is
/// an internal contract violation.
enum class ErrorKind {
    MassMismatch,
    EmptyHistogram,
    DimensionError,
    SupportMismatch,
    EmptyInput,
    KTooLarge,
    ParseError,
    SelfLoop,
    DuplicateEdge,
    NodeOutOfRange,
    EmptyGraph,
    UnknownEdge,
    DimensionMismatch,
    UnsupportedDimension,
    EmptyFront,
    NTooSmall,
    FrontTooSmall,
    InfeasibleParent,
    LengthMismatch,
    UnevaluatedIndividual,
    SamplingExhausted,
    NonpositiveTravelTime,
    NegativeTime,
    TimeBeyondHorizon,
    BudgetTooLarge,
    ShapeMismatch,
    RatingOutOfRange,
    UserTooSparse,
    UnratedRecommendation,
    ZeroDegreeItem,
    ConfigError,
    DataError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace mowst

#endif
