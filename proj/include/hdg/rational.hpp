#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace hdg {

// Exact arbitrary-precision rational. Every quantity in this library lives in
// (1/4 det^2) * Z, so there is no floating point anywhere.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational half() { return Rational(1, 2); }
inline Rational quarter() { return Rational(1, 4); }

// Lowest-terms "p/q" form, "p" when the denominator is 1, "0" for zero.
inline std::string to_string(const Rational& r) {
    const Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline std::optional<Rational> parse_rational(const std::string& s) {
    try {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(Integer(s));
        const Integer num(s.substr(0, slash));
        const Integer den(s.substr(slash + 1));
        if (den == 0) return std::nullopt;
        return Rational(num, den);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace hdg
