#ifndef QIDENT_RATIONAL_HPP
#define QIDENT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "qident/errors.hpp"

namespace qident {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer rat_num(const Rational& r) { return numerator(r); }
inline Integer rat_den(const Rational& r) { return denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

/// Exact conversion to long long; throws on overflow or non-integer.
inline long long to_ll(const Rational& r) {
    if (!is_integer(r)) throw Error("to_ll: not an integer: " + r.str());
    return static_cast<long long>(numerator(r));
}

inline long long to_ll(const Integer& n) { return static_cast<long long>(n); }

/// Largest integer <= r.
inline Integer rat_floor(const Rational& r) {
    Integer q = numerator(r) / denominator(r);
    if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
    return q;
}

/// Smallest integer >= r.
inline Integer rat_ceil(const Rational& r) { return -rat_floor(-r); }

/// base^exp for integer exp (negative allowed; base must be nonzero then).
inline Rational rat_pow(const Rational& base, long long exp) {
    if (exp == 0) return Rational(1);
    if (exp < 0) {
        if (base == 0) throw Error("rat_pow: zero base with negative exponent");
        return Rational(1) / rat_pow(base, -exp);
    }
    Rational acc(1), b = base;
    long long e = exp;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

/// Parses "a", "-a", "a/b" with optional surrounding whitespace.
inline Rational parse_rational(const std::string& text) {
    size_t begin = text.find_first_not_of(" \t");
    size_t end = text.find_last_not_of(" \t");
    if (begin == std::string::npos) throw Error("parse_rational: empty string");
    std::string s = text.substr(begin, end - begin + 1);
    try {
        size_t slash = s.find('/');
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw Error("parse_rational: zero denominator");
        return Rational(num, den);
    } catch (const std::exception& e) {
        throw Error("parse_rational: cannot parse '" + s + "'");
    }
}

/// "a" for integers, "a/b" otherwise.
inline std::string rat_str(const Rational& r) { return r.str(); }

} // namespace qident

#endif
