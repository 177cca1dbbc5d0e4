#include "qmckay/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace qmckay {

int euler_phi(int n) {
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

// Exact division of integer polynomials, remainder known to be zero.
// Used to peel Phi_n out of x^n - 1.
std::vector<Int> poly_divide_exact(std::vector<Int> num, const std::vector<Int>& den) {
    std::vector<Int> quot(num.size() - den.size() + 1, Int(0));
    const Int& lead = den.back();
    for (std::size_t i = quot.size(); i-- > 0;) {
        Int c = num[i + den.size() - 1] / lead;
        quot[i] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < den.size(); ++j)
            num[i + j] -= c * den[j];
    }
    return quot;
}

// Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, filled bottom-up so every
// divisor is already cached. Caller holds the cache lock.
const std::vector<Int>& fill_cyclotomic(std::map<int, std::vector<Int>>& cache, int m) {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::vector<Int> poly(static_cast<std::size_t>(m) + 1, Int(0));
    poly.front() = -1;
    poly.back() = 1;
    for (int d = 1; d < m; ++d) {
        if (m % d == 0) poly = poly_divide_exact(std::move(poly), fill_cyclotomic(cache, d));
    }
    return cache.emplace(m, std::move(poly)).first->second;
}

} // namespace

const std::vector<Int>& cyclotomic_polynomial(int n) {
    static std::mutex mutex;
    static std::map<int, std::vector<Int>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    return fill_cyclotomic(cache, n);
}

namespace {

void check_order(int order) {
    if (order < 2 || order % 2 != 0)
        throw OrderMismatch("cyclotomic order must be an even integer >= 2, got " +
                            std::to_string(order));
}

// Remainder of a rational polynomial modulo the monic Phi_order.
std::vector<Rational> reduce_mod_phi(std::vector<Rational> poly, int order) {
    const std::vector<Int>& phi = cyclotomic_polynomial(order);
    const std::size_t deg = phi.size() - 1;
    while (poly.size() > deg) {
        Rational c = poly.back();
        poly.pop_back();
        if (c.is_zero()) continue;
        // subtract c * x^{poly.size()-deg} * Phi (leading term already gone)
        const std::size_t shift = poly.size() - deg;
        for (std::size_t j = 0; j < deg; ++j)
            poly[shift + j] -= c * Rational(phi[j]);
    }
    poly.resize(deg, Rational(0));
    return poly;
}

} // namespace

Cyclotomic::Cyclotomic(int order) : order_(order) {
    check_order(order);
    coords_.assign(static_cast<std::size_t>(euler_phi(order)), Rational(0));
}

Cyclotomic::Cyclotomic(int order, Rational constant) : Cyclotomic(order) {
    coords_[0] = std::move(constant);
}

bool Cyclotomic::is_zero() const {
    for (const Rational& c : coords_)
        if (!c.is_zero()) return false;
    return true;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ != b.order_)
        throw OrderMismatch("cyclotomic order mismatch: " + std::to_string(a.order_) +
                            " vs " + std::to_string(b.order_));
    Cyclotomic r(a.order_);
    for (std::size_t i = 0; i < r.coords_.size(); ++i)
        r.coords_[i] = a.coords_[i] + b.coords_[i];
    return r;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r(order_);
    for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = -coords_[i];
    return r;
}

Cyclotomic operator*(const Rational& s, const Cyclotomic& x) {
    Cyclotomic r(x.order_);
    for (std::size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] = s * x.coords_[i];
    return r;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ != b.order_)
        throw OrderMismatch("cyclotomic order mismatch: " + std::to_string(a.order_) +
                            " vs " + std::to_string(b.order_));
    std::vector<Rational> conv(2 * a.coords_.size(), Rational(0));
    for (std::size_t i = 0; i < a.coords_.size(); ++i) {
        if (a.coords_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coords_.size(); ++j) {
            if (b.coords_[j].is_zero()) continue;
            conv[i + j] += a.coords_[i] * b.coords_[j];
        }
    }
    Cyclotomic r(a.order_);
    r.coords_ = reduce_mod_phi(std::move(conv), a.order_);
    return r;
}

std::complex<double> Cyclotomic::embed() const {
    const double step = 2.0 * std::numbers::pi / order_;
    std::complex<double> sum(0.0, 0.0);
    for (std::size_t k = 0; k < coords_.size(); ++k) {
        if (coords_[k].is_zero()) continue;
        sum += coords_[k].to_double() *
               std::complex<double>(std::cos(step * static_cast<double>(k)),
                                    std::sin(step * static_cast<double>(k)));
    }
    return sum;
}

std::string Cyclotomic::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coords_.size(); ++k) {
        if (coords_[k].is_zero()) continue;
        if (!first) os << " + ";
        os << coords_[k].to_string();
        if (k > 0) os << "*z^" << k;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

Cyclotomic root_power(int order, Int k) {
    check_order(order);
    k %= order;
    if (k < 0) k += order;
    std::vector<Rational> poly(static_cast<std::size_t>(k.convert_to<long long>()) + 1,
                               Rational(0));
    poly.back() = Rational(1);
    Cyclotomic r(order);
    r.coords_ = reduce_mod_phi(std::move(poly), order);
    return r;
}

Cyclotomic root_of_unity(const Int& p, const Int& q, int order) {
    check_order(order);
    if (q <= 0) throw OrderMismatch("root_of_unity needs a positive q");
    const Int n = Int(order) / 2;
    if (n % q != 0)
        throw OrderMismatch("root order " + q.str() + " does not divide N = " + n.str());
    // e^{i*pi*p/q} = zeta_order^{p * N/q}
    return root_power(order, p * (n / q));
}

Cyclotomic sign_power(const Rational& e, int order) {
    return root_of_unity(e.numerator(), e.denominator(), order);
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x) {
    return os << x.to_string();
}

} // namespace qmckay
