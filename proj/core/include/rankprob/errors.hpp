#pragma once

#include <stdexcept>
#include <string>

namespace rankprob {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DivisionByZeroError : public Error {
public:
    explicit DivisionByZeroError(const std::string& what) : Error(what) {}
};

/// A derivation produced pi with a negative exponent.  None of the exact
/// quantities handled here ever need pi in a denominator, so this always
/// indicates a transcription bug upstream.
class NegativePiPowerError : public Error {
public:
    explicit NegativePiPowerError(const std::string& what) : Error(what) {}
};

class SingularMatrixError : public Error {
public:
    explicit SingularMatrixError(const std::string& what) : Error(what) {}
};

class DegeneratePencilError : public Error {
public:
    explicit DegeneratePencilError(const std::string& what) : Error(what) {}
};

class NoConvergenceError : public Error {
public:
    explicit NoConvergenceError(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

class NotRankNError : public Error {
public:
    explicit NotRankNError(const std::string& what) : Error(what) {}
};

class RepeatedEigenvaluesError : public Error {
public:
    explicit RepeatedEigenvaluesError(const std::string& what) : Error(what) {}
};

} // namespace rankprob
