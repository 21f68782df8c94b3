#pragma once

#include <stdexcept>
#include <string>

namespace cyldec {

enum class ErrorCode {
    NotPermutation,
    TauNotFixedPointFreeInvolution,
    ThetaNotSection,
    DimensionMismatch,
    OrientationMixedWithinOrbit,
    NotMinimal,
    NotStable,
    NotAlternating,
    UnsupportedProfile,
    UnequalComponentCounts,
    InvalidPairing,
    InvalidMetric,
    NonPositiveHeight,
    LengthMismatch,
    ZeroOrderSingularity,
    MoreThanTwoSingularities,
    NotTwoSingularities,
    OddOrderSingularity,
    NonPositiveDeterminant,
    HeightCollapse,
    SingularityCollision,
    NonFieldDirection,
    MixedDiscriminants,
    InvalidDiscriminant,
    ZeroValue,
    DivisionByZero,
    ParseError,
    InvalidSurface,
    ScenarioAssertionFailed,
    UnknownScenario,
    Internal,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace cyldec
