#include "qmckay/gamma.hpp"

#include <cmath>
#include <numbers>

namespace qmckay {

namespace {

// Rising factorial (b)_n, n >= 0 and small by construction (the series
// truncation keeps Gamma shifts at desk scale).
Rational rising_factorial(const Rational& b, long long n) {
    Rational prod(1);
    Rational factor = b;
    for (long long j = 0; j < n; ++j) {
        if (factor.is_zero()) return Rational(0);
        prod *= factor;
        factor += Rational(1);
    }
    return prod;
}

} // namespace

Rational gamma_ratio(const Rational& a, const Rational& b) {
    Rational shift = a - b;
    if (!shift.is_integer())
        throw NotIntegerShift("gamma_ratio(" + a.to_string() + ", " + b.to_string() +
                              "): arguments do not differ by an integer");
    const long long n = shift.to_integer().convert_to<long long>();
    if (n >= 0) return rising_factorial(b, n);
    Rational prod(1);
    Rational factor = a;
    for (long long j = 0; j < -n; ++j) {
        if (factor.is_zero())
            throw PoleError("gamma_ratio(" + a.to_string() + ", " + b.to_string() +
                            "): pole of Gamma(" + a.to_string() + ") is not cancelled");
        prod *= factor;
        factor += Rational(1);
    }
    return Rational(1) / prod;
}

Rational exact_factorial(const Int& n) {
    if (n < 0) throw PoleError("factorial of negative integer " + n.str());
    Rational r(1);
    for (Int k = 2; k <= n; ++k) r *= Rational(k);
    return r;
}

double lanczos_gamma(double x, const std::array<double, 15>& coeffs) {
    // Valid for x >= 1/2; callers handle reflection.
    double sum = coeffs[0];
    for (std::size_t k = 1; k < coeffs.size(); ++k)
        sum += coeffs[k] / (x - 1.0 + static_cast<double>(k));
    const double t = x + kLanczosG - 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x - 0.5) * std::exp(-t) * sum;
}

namespace {

double gamma_with_table(double x, const std::array<double, 15>& coeffs) {
    if (x <= 0.0 && x == std::floor(x))
        throw PoleError("gamma_float: pole at nonpositive integer " + std::to_string(x));
    if (x < 0.5) {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::numbers::pi /
               (std::sin(std::numbers::pi * x) * gamma_with_table(1.0 - x, coeffs));
    }
    return lanczos_gamma(x, coeffs);
}

} // namespace

double gamma_float(double x) { return gamma_with_table(x, kLanczosCoefficients); }

} // namespace qmckay
