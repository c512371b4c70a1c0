#pragma once

#include <stdexcept>
#include <string>

namespace chaostream {

// Common base so callers can catch every library failure in one handler.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A value fed to a numeric operation is outside its domain (non-finite,
// out of the documented range, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// An integration step produced a non-finite state.
class IntegrationDiverged : public Error {
public:
    using Error::Error;
};

// Malformed file contents or an ill-formed container (WAV, key file,
// bit-length mismatch).
class FormatError : public Error {
public:
    using Error::Error;
};

// Sequence lengths incompatible with the requested operation.
class LengthError : public Error {
public:
    using Error::Error;
};

// Input on which the requested statistic is undefined (constant sequence,
// zero-energy signal).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

// Parameter value outside the operation's contract.
class ParamError : public Error {
public:
    using Error::Error;
};

// Could not open, read or write a file.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace chaostream
