#pragma once

#include <stdexcept>
#include <string>

namespace orbitlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FactorMismatchError : Error {
    using Error::Error;
};

// Class arithmetic left the admissible range (II_1 sum > 1, I_fin count > n).
struct OverflowError : Error {
    using Error::Error;
};

struct RationalOverflowError : Error {
    using Error::Error;
};

struct InvariantViolationError : Error {
    using Error::Error;
};

struct NonpositiveRadiusError : Error {
    using Error::Error;
};

struct FrameTooSmallError : Error {
    using Error::Error;
};

struct NonSeparablePredualError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct NotNormalError : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

}  // namespace orbitlab
