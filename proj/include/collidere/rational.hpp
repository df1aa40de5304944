#pragma once

#include <boost/rational.hpp>

#include <string>

#include "collidere/error.hpp"

namespace collidere {

// Exact rational arithmetic for spectral numbers and interval endpoints.
// Verdicts depend on endpoint membership, so nothing here is ever a double.
using Rational = boost::rational<long long>;

inline long long floor_div(long long a, long long b) {
    // b > 0 assumed (boost::rational keeps denominators positive)
    long long q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

inline long long rat_floor(const Rational& r) {
    return floor_div(r.numerator(), r.denominator());
}

inline long long rat_ceil(const Rational& r) {
    return -floor_div(-r.numerator(), r.denominator());
}

inline bool rat_is_integer(const Rational& r) { return r.denominator() == 1; }

// Fixed "num/den" form, e.g. "-1/2", "0/1". Used in all JSON payloads.
inline std::string rat_to_fraction_string(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Human form: integers print bare ("0"), everything else as "num/den".
inline std::string rat_to_display_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return rat_to_fraction_string(r);
}

Rational rat_from_string(const std::string& text);

}  // namespace collidere
