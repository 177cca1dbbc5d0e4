#include "qmckay/selftest.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "qmckay/cyclotomic.hpp"
#include "qmckay/gamma.hpp"
#include "qmckay/rational.hpp"

namespace qmckay {

namespace {

// Draw uniformly from [lo, hi] without std::uniform_int_distribution so the
// sample set is identical on every platform for a given seed.
long long draw(std::mt19937_64& rng, long long lo, long long hi) {
    return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double gamma_oracle(double x, bool corrupt) {
    if (!corrupt) return gamma_float(x);
    std::array<double, 15> bad = kLanczosCoefficients;
    bad[3] *= 1.0 + 1e-6; // deliberately off in the 7th digit
    if (x < 0.5) {
        const double pi = 3.14159265358979323846;
        return pi / (std::sin(pi * x) * lanczos_gamma(1.0 - x, bad));
    }
    return lanczos_gamma(x, bad);
}

} // namespace

SelftestResult run_selftest(std::uint64_t seed, bool corrupt_oracle) {
    SelftestResult result;
    std::mt19937_64 rng(seed);

    // gamma_ratio vs float oracle: b = p/q with |p| <= 50, 1 <= q <= 12,
    // |n| <= 20, keeping b and b+n in the oracle's accurate range and away
    // from nonpositive integers.
    const int target_cases = 1000;
    while (result.gamma_cases < target_cases) {
        const long long q = draw(rng, 1, 12);
        const long long p = draw(rng, -50, 50);
        const long long n = draw(rng, -20, 20);
        const Rational b{Int(p), Int(q)};
        const Rational a = b + Rational(n);
        if (b.is_integer() && b <= Rational(0)) continue;
        if (a.is_integer() && a <= Rational(0)) continue;
        if (abs(a) > Rational(50) || abs(b) > Rational(50)) continue;

        const Rational exact = gamma_ratio(a, b);
        if (exact.is_zero()) continue; // relative error undefined at 0
        const double oracle = gamma_oracle(a.to_double(), corrupt_oracle) /
                              gamma_oracle(b.to_double(), corrupt_oracle);
        const double rel = std::abs(exact.to_double() - oracle) / std::abs(oracle);
        result.max_rel_error = std::max(result.max_rel_error, rel);
        if (rel > 1e-9) {
            std::ostringstream os;
            os << "gamma_ratio(" << a << ", " << b << ") = " << exact.to_double()
               << " vs oracle " << oracle << " (rel " << rel << ")";
            result.failures.push_back(os.str());
        }
        ++result.gamma_cases;
    }

    // Exact cyclotomic identities at order 10.
    const int order = 10;
    const Cyclotomic zeta = root_power(order, 1);
    const Cyclotomic one = Cyclotomic::one(order);

    Cyclotomic power = one;
    for (int k = 0; k < order; ++k) power = power * zeta;
    if (!(power == one)) result.failures.push_back("zeta^10 != 1");

    Cyclotomic geometric = Cyclotomic::zero(order);
    for (int k = 0; k < order; ++k) geometric += root_power(order, k);
    if (!geometric.is_zero()) result.failures.push_back("sum of all 10th roots != 0");

    Cyclotomic phi_at_zeta = Cyclotomic::zero(order);
    const std::vector<Int>& phi = cyclotomic_polynomial(order);
    for (std::size_t k = 0; k < phi.size(); ++k)
        phi_at_zeta += Rational(phi[k]) * root_power(order, Int(k));
    if (!phi_at_zeta.is_zero()) result.failures.push_back("Phi_10(zeta_10) != 0");

    // Ring laws and the embedding homomorphism on random elements.
    auto random_element = [&]() {
        Cyclotomic sum = Cyclotomic::zero(order);
        for (int k = 0; k < 4; ++k) {
            Rational c(Int(draw(rng, -9, 9)), Int(draw(rng, 1, 7)));
            sum += c * root_power(order, k);
        }
        return sum;
    };
    for (int round = 0; round < 50; ++round) {
        const Cyclotomic x = random_element();
        const Cyclotomic y = random_element();
        const Cyclotomic z = random_element();
        if (!(x + y == y + x) || !(x * y == y * x))
            result.failures.push_back("commutativity failed");
        if (!((x + y) + z == x + (y + z)) || !((x * y) * z == x * (y * z)))
            result.failures.push_back("associativity failed");
        if (!(x * (y + z) == x * y + x * z)) result.failures.push_back("distributivity failed");

        const std::complex<double> lhs = (x * y).embed();
        const std::complex<double> rhs = x.embed() * y.embed();
        const double scale = std::max(1.0, std::abs(rhs));
        if (std::abs(lhs - rhs) / scale > 1e-9)
            result.failures.push_back("embedding is not multiplicative to 1e-9");
    }

    // root_of_unity periodicity and power law.
    for (int round = 0; round < 20; ++round) {
        const long long q = (draw(rng, 0, 1) == 0) ? 1 : 5;
        const long long p = draw(rng, -15, 15);
        const Cyclotomic r = root_of_unity(Int(p), Int(q), order);
        if (!(r == root_of_unity(Int(p + 2 * q), Int(q), order)))
            result.failures.push_back("root_of_unity not 2q-periodic");
        Cyclotomic acc = one;
        for (long long k = 0; k < 2 * q; ++k) acc = acc * r;
        if (!(acc == one)) result.failures.push_back("root_of_unity^(2q) != 1");
    }

    result.pass = result.failures.empty();
    return result;
}

} // namespace qmckay
