// csv.hpp — locale-independent float formatting for byte-reproducible CSV

#pragma once

#include <charconv>
#include <string>

namespace gwpt {

// Shortest representation that round-trips the double exactly; '.' decimal
// separator regardless of locale.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace gwpt
