// ckdpi/errors.hpp - error types shared across the toolchain
#pragma once

#include <stdexcept>
#include <string>

namespace ckdpi {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Lexical or syntactic error in a source file, with position information.
class ParseError : public Error {
public:
    ParseError(std::string path, int line, int column, const std::string& message)
        : Error(path.empty()
                    ? std::to_string(line) + ":" + std::to_string(column) + ": " + message
                    : path + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          path_(std::move(path)), line_(line), column_(column) {}

    const std::string& path() const { return path_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    std::string path_;
    int line_;
    int column_;
};

/// Structural problem in an ingested document or assembled model
/// (schema violation, duplicate class, inheritance cycle, ...).
class ModelError : public Error {
public:
    using Error::Error;
};

/// Bad user-facing input: unreadable path, malformed CSV, invalid config.
/// The CLI maps this to exit status 2.
class InputError : public Error {
public:
    using Error::Error;
};

/// Raised by the calibration solvers when a linear system has no unique
/// solution (duplicated abscissae, rank-deficient design, ...).
class SingularSystemError : public Error {
public:
    using Error::Error;
};

} // namespace ckdpi
