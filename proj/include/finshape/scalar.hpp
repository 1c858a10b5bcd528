#pragma once

#include <boost/rational.hpp>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "finshape/errors.hpp"

namespace finshape {

using Rat = boost::rational<long long>;

inline Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s));
        long long num = std::stoll(s.substr(0, slash));
        long long den = std::stoll(s.substr(slash + 1));
        if (den == 0) throw input_error("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::invalid_argument&) {
        throw input_error("malformed rational: " + s);
    } catch (const std::out_of_range&) {
        throw input_error("rational out of range: " + s);
    }
}

inline std::string to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// A non-negative squared magnitude (squared distance or squared threshold).
// Carries an exact rational value when the underlying coordinates are
// rational, so strict comparisons near ties can be decided exactly.
struct Sq {
    double value = 0.0;
    std::optional<Rat> exact;

    static Sq from_exact(const Rat& r) { return Sq{to_double(r), r}; }
    static Sq from_double(double v) { return Sq{v, std::nullopt}; }

    Sq scaled(const Rat& factor) const {
        Sq out;
        out.value = value * to_double(factor);
        if (exact) out.exact = *exact * factor;
        return out;
    }
};

// Three-way comparison of squared magnitudes. Returns -1, 0 or +1; 0 means
// "tie within eta" for inexact operands (the caller decides and should log a
// tie warning) and exact equality for exact operands.
inline int cmp_sq(const Sq& a, const Sq& b, double eta) {
    if (a.exact && b.exact) {
        if (*a.exact < *b.exact) return -1;
        if (*a.exact > *b.exact) return 1;
        return 0;
    }
    double d = a.value - b.value;
    if (std::fabs(d) <= eta) return 0;
    return d < 0 ? -1 : 1;
}

}  // namespace finshape
