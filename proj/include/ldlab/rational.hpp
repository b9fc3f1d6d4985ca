// rational.hpp -- exact non-negative rationals on 64-bit words.
//
// Probabilities and pattern-space fractions in the combinatorial oracles
// must be compared without rounding; every denominator at desk scale fits
// comfortably in 64 bits, so this stays word-sized with overflow checks.

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ldlab {

struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    Rational() = default;
    Rational(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        reduce();
    }
    static Rational integer(std::uint64_t n) { return Rational(n, 1); }

    void reduce() {
        const std::uint64_t g = std::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    double to_double() const { return double(num) / double(den); }
    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }

    // exact value of this * n, or throws if not integral
    std::uint64_t times_integral(std::uint64_t n) const {
        const unsigned __int128 prod = static_cast<unsigned __int128>(num) * n;
        if (prod % den != 0)
            throw std::invalid_argument("Rational: product is not an integer");
        const unsigned __int128 q = prod / den;
        if (q > UINT64_MAX) throw std::overflow_error("Rational: product overflow");
        return static_cast<std::uint64_t>(q);
    }

    // floor(this * n)
    std::uint64_t times_floor(std::uint64_t n) const {
        const unsigned __int128 prod = static_cast<unsigned __int128>(num) * n;
        const unsigned __int128 q = prod / den;
        if (q > UINT64_MAX) throw std::overflow_error("Rational: product overflow");
        return static_cast<std::uint64_t>(q);
    }

    Rational complement() const {  // 1 - this, requires this <= 1
        if (num > den) throw std::invalid_argument("Rational: complement of value > 1");
        return Rational(den - num, den);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        const std::uint64_t g = std::gcd(a.den, b.den);
        const std::uint64_t bd = b.den / g;
        const unsigned __int128 num = static_cast<unsigned __int128>(a.num) * bd +
                                      static_cast<unsigned __int128>(b.num) *
                                          (a.den / g);
        const unsigned __int128 den = static_cast<unsigned __int128>(a.den) * bd;
        if (num > UINT64_MAX || den > UINT64_MAX)
            throw std::overflow_error("Rational: add overflow");
        return Rational(static_cast<std::uint64_t>(num),
                        static_cast<std::uint64_t>(den));
    }

    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a < b) throw std::invalid_argument("Rational: negative difference");
        const std::uint64_t g = std::gcd(a.den, b.den);
        const std::uint64_t bd = b.den / g;
        const unsigned __int128 num = static_cast<unsigned __int128>(a.num) * bd -
                                      static_cast<unsigned __int128>(b.num) *
                                          (a.den / g);
        const unsigned __int128 den = static_cast<unsigned __int128>(a.den) * bd;
        if (num > UINT64_MAX || den > UINT64_MAX)
            throw std::overflow_error("Rational: subtract overflow");
        return Rational(static_cast<std::uint64_t>(num),
                        static_cast<std::uint64_t>(den));
    }

    friend Rational operator*(const Rational& a, const Rational& b) {
        // cross-reduce first so intermediate products stay small
        const std::uint64_t g1 = std::gcd(a.num, b.den);
        const std::uint64_t g2 = std::gcd(b.num, a.den);
        const unsigned __int128 n =
            static_cast<unsigned __int128>(a.num / g1) * (b.num / g2);
        const unsigned __int128 d =
            static_cast<unsigned __int128>(a.den / g2) * (b.den / g1);
        if (n > UINT64_MAX || d > UINT64_MAX)
            throw std::overflow_error("Rational: multiply overflow");
        return Rational(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d));
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<unsigned __int128>(a.num) * b.den <
               static_cast<unsigned __int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return static_cast<unsigned __int128>(a.num) * b.den <=
               static_cast<unsigned __int128>(b.num) * a.den;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    std::string to_string() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

// Accepts "3/4", "12", and plain decimals like "0.25" (parsed exactly).
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const std::uint64_t n = std::stoull(text.substr(0, slash));
        const std::uint64_t d = std::stoull(text.substr(slash + 1));
        return Rational(n, d);
    }
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        const std::string whole = text.substr(0, dot);
        const std::string frac = text.substr(dot + 1);
        if (frac.size() > 18)
            throw std::invalid_argument("parse_rational: too many decimal digits");
        std::uint64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const std::uint64_t w = whole.empty() ? 0 : std::stoull(whole);
        const std::uint64_t f = frac.empty() ? 0 : std::stoull(frac);
        return Rational(w * den + f, den);
    }
    return Rational(std::stoull(text), 1);
}

}  // namespace ldlab
