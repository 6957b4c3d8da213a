// Small fixed-capacity coordinate tuple used for all map and metric arithmetic.
#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <cstddef>
#include <initializer_list>
#include <string>

namespace expanso {

inline constexpr std::size_t kMaxDim = 8;

struct Point {
    std::array<double, kMaxDim> coord{};
    std::uint8_t dim = 0;

    Point() = default;
    Point(std::initializer_list<double> xs) {
        assert(xs.size() <= kMaxDim);
        dim = static_cast<std::uint8_t>(xs.size());
        std::size_t i = 0;
        for (double x : xs) coord[i++] = x;
    }
    static Point zeros(std::size_t d) {
        Point p;
        p.dim = static_cast<std::uint8_t>(d);
        return p;
    }

    double operator[](std::size_t i) const { return coord[i]; }
    double& operator[](std::size_t i) { return coord[i]; }
    std::size_t size() const { return dim; }

    bool operator==(const Point& o) const {
        if (dim != o.dim) return false;
        for (std::size_t i = 0; i < dim; ++i)
            if (coord[i] != o.coord[i]) return false;
        return true;
    }
};

// Concatenate two tuples (product-space states).
inline Point concat(const Point& a, const Point& b) {
    assert(a.size() + b.size() <= kMaxDim);
    Point p;
    p.dim = static_cast<std::uint8_t>(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i) p.coord[i] = a.coord[i];
    for (std::size_t i = 0; i < b.size(); ++i) p.coord[a.size() + i] = b.coord[i];
    return p;
}

inline Point slice(const Point& p, std::size_t from, std::size_t len) {
    assert(from + len <= p.size());
    Point out;
    out.dim = static_cast<std::uint8_t>(len);
    for (std::size_t i = 0; i < len; ++i) out.coord[i] = p.coord[from + i];
    return out;
}

std::string to_string(const Point& p);

} // namespace expanso
