#pragma once

#include <array>

#include "qmckay/rational.hpp"

namespace qmckay {

// Gamma(a)/Gamma(b) for rational a, b with a - b = n an integer.
//
//   n >= 0:  (b)_n = b(b+1)...(b+n-1), the rising factorial. A zero factor
//            is a legitimate value 0 (the pole of Gamma(b) downstairs kills
//            the ratio in the limit).
//   n < 0 :  1 / (a)_{-n}. Here a zero factor is an uncancelled pole of
//            Gamma(a) and raises PoleError.
//
// Throws NotIntegerShift when a - b is not an integer.
Rational gamma_ratio(const Rational& a, const Rational& b);

// n! as an exact integer-valued rational, n >= 0.
Rational exact_factorial(const Int& n);

// Lanczos table from Godfrey's 15-term fit, g = 607/128. Exposed together
// with lanczos_gamma so a corrupted table can be injected as a negative
// control in the self-test.
inline constexpr double kLanczosG = 607.0 / 128.0;
inline constexpr std::array<double, 15> kLanczosCoefficients = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

double lanczos_gamma(double x, const std::array<double, 15>& coeffs);

// Gamma(x) for real x, |x| <= 50, via Lanczos with the reflection formula
// for x < 1/2. Relative error <= 1e-12 on that range. PoleError at
// nonpositive integers.
double gamma_float(double x);

} // namespace qmckay
