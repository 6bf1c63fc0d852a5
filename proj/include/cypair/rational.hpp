#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>

namespace cypair {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p", "-p" or "p/q" in decimal; q must be a positive integer.
// Hand-rolled instead of the boost string constructor, which reads leading
// zeros as octal and can terminate the process on a zero denominator.
inline Rational parse_rational(const std::string& s) {
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("not a rational: '" + s + "'");
    };
    size_t pos = 0;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        neg = s[pos] == '-';
        ++pos;
    }
    auto digits = [&](size_t& p) -> BigInt {
        size_t start = p;
        BigInt v = 0;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) {
            v = v * 10 + (s[p] - '0');
            ++p;
        }
        if (p == start) fail();
        return v;
    };
    BigInt num = digits(pos);
    BigInt den = 1;
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        den = digits(pos);
        if (den == 0) fail();
    }
    if (pos != s.size()) fail();
    if (neg) num = -num;
    return Rational(num, den);
}

inline std::string to_string(const Rational& r) {
    return r.str();
}

}  // namespace cypair
