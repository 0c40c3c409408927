#pragma once

#include <stdexcept>
#include <string>

namespace kddx {

// Base for all recoverable data/usage errors. Anything escaping the library
// that is not a DataError is treated as an internal error by the CLI.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedRecord : DataError {
    using DataError::DataError;
};
struct EmptyInput : DataError {
    using DataError::DataError;
};
struct UnknownLabel : DataError {
    using DataError::DataError;
};
struct UnknownCategory : DataError {
    using DataError::DataError;
};
struct InsufficientData : DataError {
    using DataError::DataError;
};
struct DimensionMismatch : DataError {
    using DataError::DataError;
};
struct LengthMismatch : DataError {
    using DataError::DataError;
};
struct ClassOutOfRange : DataError {
    using DataError::DataError;
};
struct EmptyHistogram : DataError {
    using DataError::DataError;
};
struct EmptyMatrix : DataError {
    using DataError::DataError;
};
struct ConfigError : DataError {
    using DataError::DataError;
};
struct IoError : DataError {
    using DataError::DataError;
};

}  // namespace kddx
