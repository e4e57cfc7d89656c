#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace acfront {

inline constexpr double kSqrt2 = 1.4142135623730951;
// ||d/dx tanh(x/sqrt2 * ... )||_2^2 of the unit front profile: 2*sqrt(2)/3.
inline constexpr double kFrontNormSq = 0.9428090415820634;

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonMonotonePositions : BadInput {
    NonMonotonePositions() : BadInput("front positions must be strictly increasing") {}
};
struct QuadratureNotConverged : NumericError {
    explicit QuadratureNotConverged(const std::string& what) : NumericError(what) {}
};
struct UnboundedForcing : NumericError {
    explicit UnboundedForcing(const std::string& what) : NumericError(what) {}
};
struct DivergentIntegral : NumericError {
    explicit DivergentIntegral(const std::string& what) : NumericError(what) {}
};
struct RootNotBracketed : NumericError {
    explicit RootNotBracketed(const std::string& what) : NumericError(what) {}
};
struct StepSizeUnderflow : NumericError {
    explicit StepSizeUnderflow(const std::string& what) : NumericError(what) {}
};
struct NewtonDiverged : NumericError {
    explicit NewtonDiverged(const std::string& what) : NumericError(what) {}
};
struct ConditionNotSatisfied : NumericError {
    explicit ConditionNotSatisfied(const std::string& what) : NumericError(what) {}
};
struct SignConditionFailed : NumericError {
    explicit SignConditionFailed(const std::string& what) : NumericError(what) {}
};
struct SeparationTooSmall : NumericError {
    explicit SeparationTooSmall(const std::string& what) : NumericError(what) {}
};
struct NotConverged : NumericError {
    explicit NotConverged(const std::string& what) : NumericError(what) {}
};
struct OnBranchCut : BadInput {
    explicit OnBranchCut(const std::string& what) : BadInput(what) {}
};
struct NaNDetected : NumericError {
    explicit NaNDetected(const std::string& what) : NumericError(what) {}
};
struct UnknownScenario : BadInput {
    explicit UnknownScenario(const std::string& what) : BadInput(what) {}
};

}  // namespace acfront
