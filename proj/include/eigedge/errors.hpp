#pragma once

#include <stdexcept>
#include <string>

namespace eigedge {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// File could not be opened, read, or written.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

/// File format is recognized but not supported (e.g. 16-bit PGM, P3 PPM).
class FormatError : public Error {
public:
    explicit FormatError(const std::string& msg) : Error(msg) {}
};

/// File claims a supported format but its contents are malformed.
class CorruptFileError : public Error {
public:
    explicit CorruptFileError(const std::string& msg) : Error(msg) {}
};

/// Patch covariance is numerically zero; eigenfilters are undefined.
class FeaturelessImageError : public Error {
public:
    explicit FeaturelessImageError(const std::string& msg) : Error(msg) {}
};

/// Iterative solver failed to reach its stopping criterion.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

} // namespace eigedge
