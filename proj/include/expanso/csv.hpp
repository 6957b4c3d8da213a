// Locale-free deterministic formatting for CSV output: '.' decimal point,
// shortest round-trip doubles, LF line endings.
#pragma once

#include <charconv>
#include <string>

#include "expanso/point.hpp"

namespace expanso {

inline std::string fmt_double(double x) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, end);
}

// Coordinates of one point joined with ';' so a tuple stays one CSV field.
inline std::string fmt_point_field(const Point& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ';';
        s += fmt_double(p[i]);
    }
    return s;
}

} // namespace expanso
