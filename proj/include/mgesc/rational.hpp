#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "mgesc/errors.hpp"

namespace mgesc {

// Exact rational arithmetic for series coefficients. Canonical form: den > 0,
// gcd(|num|, den) = 1. Operations check for int64 overflow through 128-bit
// intermediates and throw rather than wrap, which caps usable factorials at 20!.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw argument_error("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num == y.num && x.den == y.den;
    }

    friend Rational operator-(const Rational& x) { return Rational(-x.num, x.den); }

    friend Rational operator+(const Rational& x, const Rational& y) {
        // Reduce by gcd(x.den, y.den) first: the naive x.den * y.den overflows
        // for coprime-looking factorial tails long before the reduced sum does.
        const std::int64_t g = std::gcd(x.den, y.den);
        const std::int64_t xd = x.den / g;
        const std::int64_t yd = y.den / g;
        return Rational(checked(static_cast<__int128>(x.num) * yd +
                                static_cast<__int128>(y.num) * xd),
                        checked(static_cast<__int128>(x.den) * yd));
    }

    friend Rational operator*(const Rational& x, const Rational& y) {
        // Cross-reduce first so products of reduced fractions rarely overflow.
        const std::int64_t g1 = std::gcd(x.num < 0 ? -x.num : x.num, y.den);
        const std::int64_t g2 = std::gcd(y.num < 0 ? -y.num : y.num, x.den);
        return Rational(checked(static_cast<__int128>(x.num / g1) * (y.num / g2)),
                        checked(static_cast<__int128>(x.den / g2) * (y.den / g1)));
    }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

private:
    static std::int64_t checked(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw argument_error("Rational: int64 overflow; reduce the requested order");
        return static_cast<std::int64_t>(v);
    }
};

} // namespace mgesc
