#pragma once

#include <stdexcept>
#include <string>

namespace etsynth {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented constraint (bad parameters, malformed data).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A clavicle mask did not yield usable landmarks.
class LandmarkError : public Error {
public:
    LandmarkError(std::string source_id, const std::string& what)
        : Error(source_id + ": " + what), source_id_(std::move(source_id)) {}

    const std::string& source_id() const noexcept { return source_id_; }

private:
    std::string source_id_;
};

/// A tabular input is missing required columns.
class SchemaError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Filesystem or codec failure.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace etsynth
