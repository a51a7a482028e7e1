#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace aec {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline long double to_long_double(const Rational& r) {
    return r.convert_to<long double>();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Smallest integer >= r.
inline Integer ceil_rational(const Rational& r) {
    Integer q = numerator(r) / denominator(r);
    if (q * denominator(r) < numerator(r)) ++q;
    return q;
}

// Parses "p/q" or a decimal like "1.142" into an exact rational.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(Integer(text));
    std::string head = text.substr(0, dot), frac = text.substr(dot + 1);
    if (head.empty() || head == "-" || head == "+") head += '0';
    bool neg = head[0] == '-';
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer value = Integer(head) * scale;
    Integer tail(frac);
    value += neg ? -tail : tail;
    return Rational(value, scale);
}

inline std::string rational_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

} // namespace aec
