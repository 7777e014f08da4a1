#include "roifc/error.hpp"

namespace roifc {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::InvalidFeature: return "InvalidFeature";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::InvalidRoiLabel: return "InvalidRoiLabel";
        case ErrorKind::BadMagic: return "BadMagic";
        case ErrorKind::UnsupportedVersion: return "UnsupportedVersion";
        case ErrorKind::TruncatedFile: return "TruncatedFile";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::UnknownVehicle: return "UnknownVehicle";
        case ErrorKind::InsufficientPairs: return "InsufficientPairs";
        case ErrorKind::DegenerateVariance: return "DegenerateVariance";
        case ErrorKind::NonPositiveDf: return "NonPositiveDf";
        case ErrorKind::EmptySelection: return "EmptySelection";
        case ErrorKind::PerplexityTooLarge: return "PerplexityTooLarge";
        case ErrorKind::DuplicatePointsDegenerate: return "DuplicatePointsDegenerate";
        case ErrorKind::NumericalDivergence: return "NumericalDivergence";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::TooFewPoints: return "TooFewPoints";
        case ErrorKind::SingleClass: return "SingleClass";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

bool is_numerical(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DegenerateVariance:
        case ErrorKind::DuplicatePointsDegenerate:
        case ErrorKind::NumericalDivergence:
            return true;
        default:
            return false;
    }
}

}  // namespace roifc
