#pragma once

#include <stdexcept>
#include <string>

namespace fenergy {

/// Bad arguments, shapes or parameter combinations.  The CLI maps these to
/// exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Runtime numerical-domain failures (cap exceeded, singular radius, ...).
/// The CLI maps these to exit code 3.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// -- config-type errors -----------------------------------------------------

struct ShapeMismatch : ConfigError {
    explicit ShapeMismatch(const std::string& m) : ConfigError("shape mismatch: " + m) {}
};
struct DegreeZero : ConfigError {
    explicit DegreeZero(const std::string& m) : ConfigError("degree must be >= 1: " + m) {}
};
struct DegreeOutOfRange : ConfigError {
    explicit DegreeOutOfRange(const std::string& m) : ConfigError("degree out of range: " + m) {}
};
struct GridTooSmall : ConfigError {
    explicit GridTooSmall(const std::string& m) : ConfigError("grid too small: " + m) {}
};
struct SpanTooShort : ConfigError {
    explicit SpanTooShort(const std::string& m) : ConfigError("sample span too short: " + m) {}
};
struct OutOfRegimeRange : ConfigError {
    explicit OutOfRegimeRange(const std::string& m) : ConfigError("radius outside regime range: " + m) {}
};
struct PoleViolation : ConfigError {
    explicit PoleViolation(const std::string& m) : ConfigError("warp violates pole conditions: " + m) {}
};
struct InvalidParameter : ConfigError {
    explicit InvalidParameter(const std::string& m) : ConfigError("invalid parameter: " + m) {}
};

// -- numerical-domain errors ------------------------------------------------

struct DomainExceeded : NumericError {
    explicit DomainExceeded(const std::string& m) : NumericError("profile domain exceeded: " + m) {}
};
struct SingularRadius : NumericError {
    explicit SingularRadius(const std::string& m) : NumericError("singular radius: " + m) {}
};
struct NotSpacelike : NumericError {
    explicit NotSpacelike(const std::string& m) : NumericError("field is not spacelike: " + m) {}
};
struct NotASolution : NumericError {
    explicit NotASolution(const std::string& m) : NumericError("field does not solve the equation: " + m) {}
};
struct SupportViolation : NumericError {
    explicit SupportViolation(const std::string& m) : NumericError("support touches the boundary margin: " + m) {}
};
struct ConservationPrecheckFailed : NumericError {
    explicit ConservationPrecheckFailed(const std::string& m)
        : NumericError("conservation pre-check failed: " + m) {}
};
struct InadmissibleExponent : NumericError {
    explicit InadmissibleExponent(const std::string& m) : NumericError("inadmissible exponent: " + m) {}
};

}  // namespace fenergy
