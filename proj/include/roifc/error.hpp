#pragma once

#include <stdexcept>
#include <string>

namespace roifc {

/// Every failure the library can raise, one kind per contract violation.
enum class ErrorKind {
    // core / ingest
    EmptyInput,
    DimensionMismatch,
    InvalidFeature,
    ParseError,
    InvalidRoiLabel,
    BadMagic,
    UnsupportedVersion,
    TruncatedFile,
    IoError,
    // similarity
    UnknownVehicle,
    InsufficientPairs,
    // stats
    DegenerateVariance,
    NonPositiveDf,
    EmptySelection,
    // embed
    PerplexityTooLarge,
    DuplicatePointsDegenerate,
    NumericalDivergence,
    ShapeMismatch,
    // clustermetrics
    TooFewPoints,
    SingleClass,
    // configuration / misuse
    InvalidArgument,
};

const char* to_string(ErrorKind kind);

/// Kinds that indicate a numerical failure rather than bad input.
/// The CLI maps these to exit code 2, everything else to 1.
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& message)
        : std::runtime_error(module + ": " + to_string(kind) + ": " + message),
          kind_(kind),
          module_(std::move(module)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorKind kind_;
    std::string module_;
};

}  // namespace roifc
