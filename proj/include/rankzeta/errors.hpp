#pragma once

/**
 * @file errors.hpp
 * @brief Exception hierarchy shared by every rankzeta module.
 *
 * Each exception carries an ErrorKind so the command-line front end can map
 * failures onto stable process exit codes.
 */

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rankzeta {

enum class ErrorKind {
    usage = 1,
    validation = 2,
    resource_limit = 3,
    numeric_failure = 4,
    inconsistency = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

/// A precondition on an argument was violated (bad q, wrong dimension, ...).
class InvalidParameter : public Error {
public:
    explicit InvalidParameter(const std::string& what) : Error(ErrorKind::validation, what) {}
};

class DivisionByZero : public InvalidParameter {
public:
    explicit DivisionByZero(const std::string& what) : InvalidParameter(what) {}
};

/// Malformed input file. Line numbers are 1-based; 0 means "whole file".
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(ErrorKind::validation, line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ResourceLimit : public Error {
public:
    explicit ResourceLimit(const std::string& what) : Error(ErrorKind::resource_limit, what) {}
};

class NumericFailure : public Error {
public:
    explicit NumericFailure(const std::string& what) : Error(ErrorKind::numeric_failure, what) {}
};

/// Two routes to the same quantity disagreed, or an identity that must hold failed.
class Inconsistency : public Error {
public:
    explicit Inconsistency(const std::string& what) : Error(ErrorKind::inconsistency, what) {}
};

}  // namespace rankzeta
