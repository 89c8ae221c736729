#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace goursat {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return Rational(num, den);
}

inline Integer rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return rat_den(r) == 1; }

inline std::string rational_to_string(const Rational& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

inline Rational parse_rational(const std::string& text) {
    auto bad = [&] { return std::invalid_argument("bad rational literal: " + text); };
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) throw bad();
    Integer num(text.substr(start, i - start));
    Integer den = 1;
    if (i < text.size()) {
        if (text[i] != '/') throw bad();
        ++i;
        std::size_t dstart = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == dstart || i != text.size()) throw bad();
        den = Integer(text.substr(dstart, i - dstart));
        if (den == 0) throw std::domain_error("rational with zero denominator: " + text);
    }
    Rational r(num, den);
    return neg ? Rational(-r) : r;
}

inline double rational_to_double(const Rational& r) {
    return r.convert_to<double>();
}

}  // namespace goursat
