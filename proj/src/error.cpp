#include "mowst/error.hpp"

namespace mowst {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::MassMismatch: return "MassMismatch";
    case ErrorKind::EmptyHistogram: return "EmptyHistogram";
    case ErrorKind::DimensionError: return "DimensionError";
    case ErrorKind::SupportMismatch: return "SupportMismatch";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::KTooLarge: return "KTooLarge";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::NodeOutOfRange: return "NodeOutOfRange";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::UnknownEdge: return "UnknownEdge";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::EmptyFront: return "EmptyFront";
    case ErrorKind::NTooSmall: return "NTooSmall";
    case ErrorKind::FrontTooSmall: return "FrontTooSmall";
    case ErrorKind::InfeasibleParent: return "InfeasibleParent";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::UnevaluatedIndividual: return "UnevaluatedIndividual";
    case ErrorKind::SamplingExhausted: return "SamplingExhausted";
    case ErrorKind::NonpositiveTravelTime: return "NonpositiveTravelTime";
    case ErrorKind::NegativeTime: return "NegativeTime";
    case ErrorKind::TimeBeyondHorizon: return "TimeBeyondHorizon";
    case ErrorKind::BudgetTooLarge: return "BudgetTooLarge";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::RatingOutOfRange: return "RatingOutOfRange";
    case ErrorKind::UserTooSparse: return "UserTooSparse";
    case ErrorKind::UnratedRecommendation: return "UnratedRecommendation";
    case ErrorKind::ZeroDegreeItem: return "ZeroDegreeItem";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::DataError: return "DataError";
    }
    return "UnknownError";
}

} // namespace mowst
