#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rr {

/// Error categories; values match the CLI exit-code contract.
enum class ErrorCode : int {
    check_failed = 1,  // a pass/fail check exceeded its threshold
    validation   = 2,  // bad input: parse errors, precondition violations
    numeric      = 3,  // domain errors, non-finite values, degenerate geometry
    io           = 4,  // file read/write failures
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    int exit_code() const noexcept { return static_cast<int>(code_); }

    /// Optional machine-readable payload (JSON text) for callers that
    /// forward diagnostics, e.g. the spherical-curve check on stderr.
    const std::string& detail() const noexcept { return detail_; }
    void set_detail(std::string d) { detail_ = std::move(d); }

private:
    ErrorCode code_;
    std::string detail_;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& message)
        : Error(ErrorCode::validation, message) {}
};

struct NumericError : Error {
    explicit NumericError(const std::string& message)
        : Error(ErrorCode::numeric, message) {}
};

struct IoError : Error {
    explicit IoError(const std::string& message)
        : Error(ErrorCode::io, message) {}
};

/// Parse failure with the byte offset of the offending token.
struct ParseError : Error {
    ParseError(const std::string& message, std::size_t offset)
        : Error(ErrorCode::validation, message + " (at offset " + std::to_string(offset) + ")"),
          offset(offset) {}

    std::size_t offset;
};

}  // namespace rr
