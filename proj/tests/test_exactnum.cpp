#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qmckay/cyclotomic.hpp"
#include "qmckay/framed.hpp"
#include "qmckay/gamma.hpp"
#include "qmckay/rational.hpp"
#include "qmckay/selftest.hpp"

using namespace qmckay;

namespace {

Rational rat(long long p, long long q = 1) { return Rational(Int(p), Int(q)); }

} // namespace

TEST_CASE("rational canonical form and parsing") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat(-2, -4) == rat(1, 2));
    CHECK(rat(2, -4) == rat(-1, 2));
    CHECK(rat(0, 7).denominator() == 1);
    CHECK(rat(7, 5).floor() == 1);
    CHECK(rat(-7, 5).floor() == -2);
    CHECK(rat(-10, 5).floor() == -2);

    CHECK(parse_rational("-3/5") == rat(-3, 5));
    CHECK(parse_rational("4") == rat(4));
    CHECK(parse_rational("+4/6") == rat(2, 3));
    CHECK(parse_rational("12").to_string() == "12");
    CHECK(parse_rational("-3/5").to_string() == "-3/5");
    CHECK_THROWS_AS(parse_rational("1/0"), SemanticError);
    CHECK_THROWS_AS(parse_rational("a/2"), SyntaxError);
    CHECK_THROWS_AS(parse_rational("1/-2"), SyntaxError);
    CHECK_THROWS_AS(parse_rational(""), SyntaxError);
}

TEST_CASE("framed rational substitution is linear") {
    const FramedRational v(rat(1, 5), rat(1, 5)); // 1/5 + 1/5 f
    CHECK(v.at(rat(2)) == rat(3, 5));
    CHECK(v.at(rat(-1, 2)) == rat(1, 10));
    const FramedRational w = v.compose_affine(rat(5), rat(2)); // f = 5g + 2
    CHECK(w == FramedRational(rat(3, 5), rat(1)));
    CHECK(w.at(rat(0)) == v.at(rat(2)));
}

TEST_CASE("gamma_ratio spec examples") {
    CHECK(gamma_ratio(rat(7, 5), rat(2, 5)) == rat(2, 5));
    CHECK(gamma_ratio(rat(9, 7), rat(9, 7)) == rat(1));
    CHECK(gamma_ratio(rat(2), rat(-1)) == rat(0));
    CHECK(gamma_ratio(rat(2, 5), rat(7, 5)) == rat(5, 2));
    CHECK_THROWS_AS(gamma_ratio(rat(-1), rat(2)), PoleError);
    CHECK_THROWS_AS(gamma_ratio(rat(1, 2), rat(1, 3)), NotIntegerShift);
}

TEST_CASE("gamma_ratio cocycle") {
    std::mt19937_64 rng(7);
    int done = 0;
    while (done < 200) {
        const long long q = 1 + static_cast<long long>(rng() % 9);
        const long long p = static_cast<long long>(rng() % 41) - 20;
        const Rational c = rat(p, q);
        const Rational b = c + rat(static_cast<long long>(rng() % 9));
        const Rational a = b + rat(static_cast<long long>(rng() % 9));
        Rational ab, bc, ac;
        try {
            ab = gamma_ratio(a, b);
            bc = gamma_ratio(b, c);
            ac = gamma_ratio(a, c);
        } catch (const PoleError&) {
            continue;
        }
        if (ab.is_zero() || bc.is_zero() || ac.is_zero()) continue;
        CHECK(ab * bc == ac);
        ++done;
    }
}

TEST_CASE("gamma_float known values") {
    CHECK(std::abs(gamma_float(5.0) - 24.0) <= 24.0 * 1e-12);
    CHECK(std::abs(gamma_float(0.5) - std::sqrt(std::acos(-1.0))) <= 2e-12);
    CHECK(std::abs(gamma_float(1.0) - 1.0) <= 1e-12);
    CHECK(std::abs(gamma_float(-0.5) + 2.0 * std::sqrt(std::acos(-1.0))) <= 4e-12);
    CHECK_THROWS_AS(gamma_float(0.0), PoleError);
    CHECK_THROWS_AS(gamma_float(-3.0), PoleError);

    // cross-check of the two independent implementations
    const double ratio = gamma_float(7.0 / 5.0) / gamma_float(2.0 / 5.0);
    CHECK(std::abs(ratio - 0.4) <= 0.4 * 1e-9);
}

TEST_CASE("root_of_unity spec examples") {
    const int order = 10;
    CHECK(root_of_unity(0, 1, order) == Cyclotomic::one(order));
    CHECK(root_of_unity(1, 1, order) == -Cyclotomic::one(order));
    CHECK(root_of_unity(-3, 5, order) == root_of_unity(7, 5, order));
    CHECK_THROWS_AS(root_of_unity(1, 3, order), OrderMismatch);

    // (result)^{2q} == 1 exactly
    for (long long p : {-3LL, 1LL, 4LL, 9LL}) {
        const Cyclotomic r = root_of_unity(p, 5, order);
        Cyclotomic acc = Cyclotomic::one(order);
        for (int k = 0; k < 10; ++k) acc = acc * r;
        CHECK(acc == Cyclotomic::one(order));
    }
}

TEST_CASE("cyclotomic identities at order 10") {
    const int order = 10;
    const Cyclotomic zeta = root_power(order, 1);

    CHECK(root_power(order, 3) * root_power(order, 7) == Cyclotomic::one(order));

    Cyclotomic sum = Cyclotomic::zero(order);
    for (int k = 0; k < 10; ++k) sum += root_power(order, k);
    CHECK(sum.is_zero());

    // Phi_10 = x^4 - x^3 + x^2 - x + 1 kills zeta
    const std::vector<Int>& phi = cyclotomic_polynomial(10);
    CHECK(phi == std::vector<Int>{1, -1, 1, -1, 1});
    Cyclotomic value = Cyclotomic::zero(order);
    for (std::size_t k = 0; k < phi.size(); ++k)
        value += Rational(phi[k]) * root_power(order, Int(k));
    CHECK(value.is_zero());

    // canonicalization folds high powers back onto the basis
    CHECK(root_power(order, 10) == Cyclotomic::one(order));
    CHECK(root_power(order, 5) == -Cyclotomic::one(order));
    CHECK(root_power(order, 7) == -root_power(order, 2));
    CHECK(zeta * root_power(order, 9) == Cyclotomic::one(order));
}

TEST_CASE("cyclotomic ring laws on random elements") {
    const int order = 10;
    std::mt19937_64 rng(11);
    auto random_element = [&]() {
        Cyclotomic sum = Cyclotomic::zero(order);
        for (int k = 0; k < 4; ++k) {
            const long long p = static_cast<long long>(rng() % 19) - 9;
            const long long q = 1 + static_cast<long long>(rng() % 6);
            sum += rat(p, q) * root_power(order, k);
        }
        return sum;
    };
    for (int round = 0; round < 100; ++round) {
        const Cyclotomic x = random_element();
        const Cyclotomic y = random_element();
        const Cyclotomic z = random_element();
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
    }
    CHECK_THROWS_AS(Cyclotomic::one(10) + Cyclotomic::one(4), OrderMismatch);
}

TEST_CASE("complex embedding agrees with exact arithmetic") {
    const int order = 10;
    const double pi = std::acos(-1.0);
    for (int k = 0; k < 10; ++k) {
        const std::complex<double> expected = std::polar(1.0, pi * k / 5.0);
        CHECK(std::abs(root_power(order, k).embed() - expected) <= 1e-9);
    }
    std::mt19937_64 rng(13);
    for (int round = 0; round < 100; ++round) {
        Cyclotomic x = Cyclotomic::zero(order);
        Cyclotomic y = Cyclotomic::zero(order);
        for (int k = 0; k < 4; ++k) {
            x += rat(static_cast<long long>(rng() % 19) - 9,
                     1 + static_cast<long long>(rng() % 6)) *
                 root_power(order, k);
            y += rat(static_cast<long long>(rng() % 19) - 9,
                     1 + static_cast<long long>(rng() % 6)) *
                 root_power(order, k);
        }
        const std::complex<double> lhs = (x * y).embed();
        const std::complex<double> rhs = x.embed() * y.embed();
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("oracle agreement: 1000 randomized gamma cases within 1e-9") {
    const SelftestResult result = run_selftest(20260810);
    CHECK(result.pass);
    CHECK(result.gamma_cases == 1000);
    CHECK(result.max_rel_error <= 1e-9);
    for (const std::string& failure : result.failures) {
        CAPTURE(failure);
        CHECK(false);
    }
}

TEST_CASE("selftest is seed-deterministic and catches a corrupted table") {
    const SelftestResult a = run_selftest(42);
    const SelftestResult b = run_selftest(42);
    CHECK(a.pass);
    CHECK(a.max_rel_error == b.max_rel_error);
    CHECK(a.gamma_cases == b.gamma_cases);

    const SelftestResult corrupted = run_selftest(42, /*corrupt_oracle=*/true);
    CHECK_FALSE(corrupted.pass);
}
