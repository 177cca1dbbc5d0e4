#pragma once

#include <ostream>
#include <string>

#include "qmckay/rational.hpp"

namespace qmckay {

// Value c0 + c1*f where f is a yet-unbound framing symbol. Framings only
// ever enter charge vectors and Gamma arguments linearly, so degree <= 1 is
// an invariant of the whole pipeline, not a truncation: framed values are
// added and scaled by rationals but never multiplied with each other.
struct FramedRational {
    Rational c0;
    Rational c1;

    FramedRational() = default;
    FramedRational(Rational constant) : c0(std::move(constant)), c1(0) {}
    FramedRational(Rational constant, Rational framing)
        : c0(std::move(constant)), c1(std::move(framing)) {}

    bool framing_free() const { return c1.is_zero(); }
    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }

    // Substitution of a numeric framing value is linear by construction.
    Rational at(const Rational& framing) const { return c0 + c1 * framing; }

    // Rewrites f := scale*g + offset in terms of the new symbol g.
    FramedRational compose_affine(const Rational& scale, const Rational& offset) const {
        return FramedRational(c0 + c1 * offset, c1 * scale);
    }

    friend FramedRational operator+(const FramedRational& a, const FramedRational& b) {
        return FramedRational(a.c0 + b.c0, a.c1 + b.c1);
    }
    friend FramedRational operator-(const FramedRational& a, const FramedRational& b) {
        return FramedRational(a.c0 - b.c0, a.c1 - b.c1);
    }
    FramedRational operator-() const { return FramedRational(-c0, -c1); }
    friend FramedRational operator*(const Rational& s, const FramedRational& v) {
        return FramedRational(s * v.c0, s * v.c1);
    }
    friend FramedRational operator*(const FramedRational& v, const Rational& s) { return s * v; }
    FramedRational& operator+=(const FramedRational& o) { return *this = *this + o; }
    FramedRational& operator-=(const FramedRational& o) { return *this = *this - o; }

    friend bool operator==(const FramedRational& a, const FramedRational& b) {
        return a.c0 == b.c0 && a.c1 == b.c1;
    }

    std::string to_string(const std::string& symbol = "f") const {
        if (framing_free()) return c0.to_string();
        std::string s;
        if (!c0.is_zero()) s = c0.to_string() + " + ";
        s += c1.to_string() + "*" + symbol;
        return s;
    }
};

inline std::ostream& operator<<(std::ostream& os, const FramedRational& v) {
    return os << v.to_string();
}

} // namespace qmckay
