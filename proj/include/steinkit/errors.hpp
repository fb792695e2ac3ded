#pragma once

#include <stdexcept>
#include <string>

namespace steinkit {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

struct NonSquareError : DimensionError {
    explicit NonSquareError(const std::string& msg) : DimensionError(msg) {}
};

struct NonFiniteEntry : Error {
    explicit NonFiniteEntry(const std::string& msg) : Error(msg) {}
};

struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

struct OrderTooLarge : Error {
    explicit OrderTooLarge(const std::string& msg) : Error(msg) {}
};

struct NotSolvable : Error {
    explicit NotSolvable(const std::string& msg) : Error(msg) {}
};

struct NotUnique : Error {
    explicit NotUnique(const std::string& msg) : Error(msg) {}
};

struct SingularDenominator : Error {
    explicit SingularDenominator(const std::string& msg) : Error(msg) {}
};

struct NonRealInput : Error {
    explicit NonRealInput(const std::string& msg) : Error(msg) {}
};

struct InvalidSpec : Error {
    explicit InvalidSpec(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct PrecheckFailed : Error {
    explicit PrecheckFailed(const std::string& msg) : Error(msg) {}
};

} // namespace steinkit
