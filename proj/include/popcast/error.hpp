#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace popcast {

/// Failure categories. Each maps onto a CLI exit code (see exit_code()).
enum class ErrorKind {
    parse,              ///< malformed input text
    structural,         ///< well-formed rows that violate series structure (gaps, duplicates, empty)
    domain,             ///< value outside its admissible domain
    range,              ///< window or target outside the available data
    insufficient_data,  ///< too few observations for the requested fit
    io,                 ///< file system failure
};

const char* to_string(ErrorKind kind) noexcept;

/// 1 for input/domain problems, 2 for range and insufficient-data problems.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parse error carrying the 1-based line number of the offending row.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error(ErrorKind::parse, "line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace popcast
