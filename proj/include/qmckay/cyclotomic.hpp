#pragma once

#include <complex>
#include <vector>

#include "qmckay/rational.hpp"

namespace qmckay {

int euler_phi(int n);

// Coefficients of the n-th cyclotomic polynomial, constant term first,
// monic of degree phi(n). Computed once per order and cached.
const std::vector<Int>& cyclotomic_polynomial(int n);

// Element of Q(zeta_order) over the power basis 1, zeta, ..., zeta^{phi-1},
// zeta = e^{2*pi*i/order}. The order is 2N throughout this library, so
// zeta = e^{i*pi/N}. Coordinates are the unique representative modulo
// Phi_order, which makes equality coordinate-wise and exact.
class Cyclotomic {
public:
    explicit Cyclotomic(int order);
    Cyclotomic(int order, Rational constant);

    static Cyclotomic zero(int order) { return Cyclotomic(order); }
    static Cyclotomic one(int order) { return Cyclotomic(order, Rational(1)); }

    int order() const { return order_; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const;

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    Cyclotomic operator-() const;
    friend Cyclotomic operator*(const Rational& s, const Cyclotomic& x);
    friend Cyclotomic operator*(const Cyclotomic& x, const Rational& s) { return s * x; }
    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        return a.order_ == b.order_ && a.coords_ == b.coords_;
    }

    std::complex<double> embed() const;

    std::string to_string() const;

private:
    friend Cyclotomic root_power(int order, Int k);

    int order_;
    std::vector<Rational> coords_; // size phi(order)
};

// zeta_order^k in canonical form (k may be any integer).
Cyclotomic root_power(int order, Int k);

// e^{i*pi*p/q} as an element of Q(zeta_order); requires q | order/2.
// Satisfies root_of_unity(p, q, .)^{2q} == 1 and periodicity p -> p + 2q.
Cyclotomic root_of_unity(const Int& p, const Int& q, int order);

// (-1)^e for rational e = p/q: e^{i*pi*e}. Same divisibility requirement.
Cyclotomic sign_power(const Rational& e, int order);

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x);

} // namespace qmckay
