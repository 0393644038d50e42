#pragma once

#include <charconv>
#include <string>

namespace chain_eigen {

// Shortest decimal string that parses back to the same double.
// Locale independent, '.' separator.
inline std::string format_double(double value) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

} // namespace chain_eigen
