#pragma once

#include <cstdint>
#include <compare>
#include <string>

#include "errors.hpp"

namespace bsig {

// A value in B^n, 1 <= n <= 64. Component i (0-based, leftmost in the bit
// string) sits at bit position width-1-i, so `bits` equals the bit string
// read as a binary number and numeric order matches bit-string order.
struct Point {
    int width = 1;
    std::uint64_t bits = 0;

    Point() = default;
    Point(int w, std::uint64_t b) : width(w), bits(b) {
        if (w < 1 || w > 64)
            throw WidthError("point width " + std::to_string(w) + " out of range [1,64]");
        if (w < 64 && (b >> w) != 0)
            throw WidthError("point value has bits above width " + std::to_string(w));
    }

    int comp(int i) const { return (bits >> (width - 1 - i)) & 1u; }

    friend bool operator==(const Point& a, const Point& b) {
        return a.width == b.width && a.bits == b.bits;
    }
    friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
        if (auto c = a.width <=> b.width; c != 0) return c;
        return a.bits <=> b.bits;
    }
};

inline std::uint64_t width_mask(int w) {
    return w == 64 ? ~0ull : ((1ull << w) - 1);
}

inline void require_same_width(const Point& a, const Point& b, const char* what) {
    if (a.width != b.width)
        throw WidthError(std::string(what) + ": widths " + std::to_string(a.width) +
                         " and " + std::to_string(b.width) + " differ");
}

inline Point zero_point(int w) { return Point(w, 0); }
inline Point ones_point(int w) { return Point(w, width_mask(w)); }

inline Point pnot(const Point& a) { return Point(a.width, ~a.bits & width_mask(a.width)); }
inline Point pand(const Point& a, const Point& b) {
    require_same_width(a, b, "and");
    return Point(a.width, a.bits & b.bits);
}
inline Point por(const Point& a, const Point& b) {
    require_same_width(a, b, "or");
    return Point(a.width, a.bits | b.bits);
}
inline Point pxor(const Point& a, const Point& b) {
    require_same_width(a, b, "xor");
    return Point(a.width, a.bits ^ b.bits);
}

inline std::string to_string(const Point& p) {
    std::string s(p.width, '0');
    for (int i = 0; i < p.width; ++i)
        if (p.comp(i)) s[i] = '1';
    return s;
}

inline Point parse_point(const std::string& s) {
    if (s.empty() || s.size() > 64)
        throw ParseError("bad point literal '" + s + "'");
    std::uint64_t bits = 0;
    for (char c : s) {
        if (c != '0' && c != '1')
            throw ParseError("bad point literal '" + s + "'");
        bits = (bits << 1) | (std::uint64_t)(c - '0');
    }
    return Point((int)s.size(), bits);
}

}
