#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

#include <compare>
#include <type_traits>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "qmckay/errors.hpp"

namespace qmckay {

using Int = boost::multiprecision::cpp_int;

// Exact fraction over cpp_int. Always stored reduced with positive
// denominator; every operation is exact, there is no rounding anywhere.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    template <typename T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
    Rational(T n) : num_(n), den_(1) {}
    Rational(Int n) : num_(std::move(n)), den_(1) {}
    Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    const Int& numerator() const { return num_; }
    const Int& denominator() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    // Round toward -inf.
    Int floor() const {
        Int q = num_ / den_; // truncates toward zero
        if (num_ < 0 && q * den_ != num_) --q;
        return q;
    }

    // Exact integer value; the caller promises is_integer().
    Int to_integer() const {
        if (den_ != 1) throw NotIntegerShift("not an integer: " + to_string());
        return num_;
    }

    double to_double() const {
        return num_.convert_to<double>() / den_.convert_to<double>();
    }

    // "p/q", or just "p" when the denominator is 1.
    std::string to_string() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw PoleError("division by zero rational");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    // Reduced canonical form makes coordinate-wise comparison exact.
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        Int l = a.num_ * b.den_;
        Int r = b.num_ * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l == r) return std::strong_ordering::equal;
        return std::strong_ordering::greater;
    }

private:
    void reduce() {
        if (den_ == 0) throw SemanticError("zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Int g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    Int num_;
    Int den_;
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

// Parses "p" or "p/q" with an optional leading sign on p. Malformed text is
// a SyntaxError; a zero denominator is a SemanticError (the file may be
// well-formed and still nonsense).
inline Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s, bool allow_sign) -> Int {
        bool negative = false;
        if (!s.empty() && allow_sign && (s.front() == '+' || s.front() == '-')) {
            negative = s.front() == '-';
            s.remove_prefix(1);
        }
        if (s.empty()) throw SyntaxError("empty integer in rational \"" + std::string(text) + "\"");
        Int v = 0;
        for (char c : s) {
            if (c < '0' || c > '9')
                throw SyntaxError("bad rational \"" + std::string(text) + "\"");
            v = v * 10 + (c - '0');
        }
        return negative ? Int(-v) : v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, true));
    Int p = parse_int(text.substr(0, slash), true);
    Int q = parse_int(text.substr(slash + 1), false);
    if (q == 0) throw SemanticError("zero denominator in rational \"" + std::string(text) + "\"");
    return Rational(std::move(p), std::move(q));
}

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

} // namespace qmckay

namespace Eigen {

template <>
struct NumTraits<qmckay::Rational> : GenericNumTraits<qmckay::Rational> {
    typedef qmckay::Rational Real;
    typedef qmckay::Rational NonInteger;
    typedef qmckay::Rational Nested;
    typedef qmckay::Rational Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 40,
        MulCost = 40,
    };
    // Exact scalar: comparisons against zero are meaningful as-is.
    static inline Real epsilon() { return qmckay::Rational(0); }
    static inline Real dummy_precision() { return qmckay::Rational(0); }
    static inline int digits10() { return 0; }
};

} // namespace Eigen

namespace qmckay {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RationalRowVector = Eigen::Matrix<Rational, 1, Eigen::Dynamic>;

} // namespace qmckay
