#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tarc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A malformed record in an input file. `line()` is 1-based; 0 when unknown.
class ParseError : public Error {
public:
    ParseError(std::string source, std::size_t line, const std::string& message)
        : Error(source + ":" + std::to_string(line) + ": " + message),
          source_(std::move(source)), line_(line) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Input data is well-formed but unusable (missing scores, degenerate groups, ...).
class DataError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure has no defined answer for its input.
class MathError : public Error {
public:
    using Error::Error;
};

/// A pipeline stage ran before the stage that produces its inputs.
class PrerequisiteError : public Error {
public:
    PrerequisiteError(std::string command, const std::string& message)
        : Error(message), command_(std::move(command)) {}

    const std::string& command() const noexcept { return command_; }

private:
    std::string command_;
};

}  // namespace tarc
