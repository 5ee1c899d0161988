// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace critickit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or out-of-range configuration (bad weights, bad flags, missing credentials).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// File could not be opened, read, or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// A record in an input file does not match its schema.
class SchemaError : public IoError {
public:
    SchemaError(std::size_t line, std::string field, const std::string& detail)
        : IoError("line " + std::to_string(line) + ": field \"" + field + "\": " + detail),
          line_(line),
          field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

/// Remote endpoint failed after the retry budget, or replied with a non-retryable status.
class TransportError : public Error {
public:
    TransportError(const std::string& what, int status = 0, int attempts = 0)
        : Error(what), status_(status), attempts_(attempts) {}

    /// HTTP status of the final attempt; 0 when no response was received.
    int status() const noexcept { return status_; }
    int attempts() const noexcept { return attempts_; }

private:
    int status_;
    int attempts_;
};

/// Model reply that does not follow an expected strict grammar (e.g. YES/NO).
class UnparseableReply : public Error {
public:
    using Error::Error;
};

} // namespace critickit
