#pragma once

#include <stdexcept>
#include <string>

namespace remile {

/// Bad configuration or usage. CLI exit status 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data. CLI exit status 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative routine failed to converge. CLI exit status 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Zero variance in a correlated variable.
class DegenerateInputError : public DataError {
public:
    using DataError::DataError;
};

/// Fewer pairwise-complete observations than an analysis needs.
class InsufficientDataError : public DataError {
public:
    using DataError::DataError;
};

} // namespace remile
