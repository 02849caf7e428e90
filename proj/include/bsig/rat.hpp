#pragma once

#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <compare>

#include "errors.hpp"

namespace bsig {

// Exact rational time value, always in lowest terms with positive denominator.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(long long n, long long d) { *this = make(n, d); }

    static Rat make(__int128 n, __int128 d) {
        if (d == 0)
            throw DomainError("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n;
        __int128 g = std::gcd((unsigned __int128)a, (unsigned __int128)d);
        if (g > 1) { n /= g; d /= g; }
        constexpr __int128 lim = (__int128)1 << 62;
        if (n >= lim || n <= -lim || d >= lim)
            throw DomainError("rational overflow");
        Rat r;
        r.num = (long long)n;
        r.den = (long long)d;
        return r;
    }

    bool is_integer() const { return den == 1; }

    // Largest integer <= this.
    long long floor() const {
        if (num >= 0) return num / den;
        return -(((-num) + den - 1) / den);
    }

    long long ceil() const { return -(-*this).floor(); }

    Rat operator-() const { return make(-(__int128)num, den); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return make((__int128)a.num * b.den + (__int128)b.num * a.den,
                    (__int128)a.den * b.den);
    }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return make((__int128)a.num * b.num, (__int128)a.den * b.den);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw DomainError("rational division by zero");
        return make((__int128)a.num * b.den, (__int128)a.den * b.num);
    }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        __int128 l = (__int128)a.num * b.den;
        __int128 r = (__int128)b.num * a.den;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
};

inline Rat rat_abs(const Rat& a) { return a.num < 0 ? -a : a; }

// Reduces t into [0, period); period must be positive.
inline Rat rat_mod(const Rat& t, const Rat& period) {
    if (period.num <= 0) throw DomainError("rat_mod needs a positive period");
    Rat q = t / period;
    return t - Rat(q.floor()) * period;
}

// gcd(a/b, c/d) = gcd(a*d, c*b) / (b*d); both arguments must be positive.
inline Rat rat_gcd(const Rat& a, const Rat& b) {
    if (a.num <= 0 || b.num <= 0) throw DomainError("rat_gcd needs positive values");
    __int128 n = std::gcd((unsigned __int128)((__int128)a.num * b.den),
                          (unsigned __int128)((__int128)b.num * a.den));
    return Rat::make(n, (__int128)a.den * b.den);
}

inline Rat rat_lcm(const Rat& a, const Rat& b) {
    return a / rat_gcd(a, b) * b;
}

inline std::string to_string(const Rat& r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

// Accepts "7/3", "-2", "0.5", "+1/2".
inline Rat parse_rat(const std::string& s) {
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i >= s.size() || !isdigit((unsigned char)s[i]))
        throw ParseError("bad rational literal '" + s + "'");
    __int128 intpart = 0;
    while (i < s.size() && isdigit((unsigned char)s[i])) {
        intpart = intpart * 10 + (s[i] - '0');
        if (intpart > ((__int128)1 << 62)) throw ParseError("rational literal overflow '" + s + "'");
        ++i;
    }
    __int128 num = intpart, den = 1;
    if (i < s.size() && s[i] == '/') {
        ++i;
        if (i >= s.size() || !isdigit((unsigned char)s[i]))
            throw ParseError("bad rational literal '" + s + "'");
        den = 0;
        while (i < s.size() && isdigit((unsigned char)s[i])) {
            den = den * 10 + (s[i] - '0');
            if (den > ((__int128)1 << 62)) throw ParseError("rational literal overflow '" + s + "'");
            ++i;
        }
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    } else if (i < s.size() && s[i] == '.') {
        ++i;
        if (i >= s.size() || !isdigit((unsigned char)s[i]))
            throw ParseError("bad rational literal '" + s + "'");
        while (i < s.size() && isdigit((unsigned char)s[i])) {
            num = num * 10 + (s[i] - '0');
            den *= 10;
            if (num > ((__int128)1 << 62) || den > ((__int128)1 << 62))
                throw ParseError("rational literal overflow '" + s + "'");
            ++i;
        }
    }
    if (i != s.size()) throw ParseError("trailing characters in rational '" + s + "'");
    if (neg) num = -num;
    return Rat::make(num, den);
}

}
