#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace rr {

/// Shortest decimal string that round-trips to the same double. Used for
/// all CSV/JSON/TOML output so repeated runs are byte-identical.
inline std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Fixed significant-digit formatting (general form); 17 digits preserve
/// doubles exactly, used for OBJ vertex lines.
inline std::string format_double(double v, int precision) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, precision);
    return std::string(buf, res.ptr);
}

}  // namespace rr
