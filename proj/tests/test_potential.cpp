#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <set>

#include "helpers.hpp"
#include "qmckay/gamma.hpp"
#include "qmckay/potential.hpp"
#include "qmckay/verify.hpp"

using namespace qmckay;
using namespace qmckay::testing;

namespace {

Rational rat(long long p, long long q = 1) { return Rational(Int(p), Int(q)); }

IndexVector idx(std::initializer_list<std::pair<const char*, long long>> values) {
    IndexVector m;
    for (const auto& [var, v] : values) m.values[var] = v;
    return m;
}

// Brute-force enumeration oracles, written as bare triple loops so they are
// independent of admissible_indices.
std::vector<IndexVector> oracle_resolution_indices(long long m0_max) {
    std::vector<IndexVector> out;
    for (long long m0 = 1; m0 <= m0_max; ++m0)
        for (long long m1 = 0; m1 <= m0_max; ++m1)
            for (long long m5 = 0; m5 <= m0_max; ++m5)
                if (m0 - 5 * m1 - 3 * m5 >= 0)
                    out.push_back(idx({{"mh0", m0}, {"mh1", m1}, {"mh5", m5}}));
    return out;
}

std::vector<IndexVector> oracle_orbifold_indices(long long m0_max) {
    std::vector<IndexVector> out;
    for (long long m0 = 1; m0 <= m0_max; ++m0)
        for (long long m4 = 0; m4 <= m0_max; ++m4)
            for (long long m5 = 0; m5 <= m0_max; ++m5)
                if (m0 - m4 - 3 * m5 >= 0 && (m0 - m4 - 3 * m5) % 5 == 0)
                    out.push_back(idx({{"m0", m0}, {"m4", m4}, {"m5", m5}}));
    return out;
}

Cyclotomic coeff_of(const PuiseuxSeries& s, const Monomial& m) {
    auto it = s.terms().find(m);
    REQUIRE(it != s.terms().end());
    return it->second;
}

ChangeOfVariables paper_cov(const GeometryBundle& orbifold, const GeometryBundle& resolution) {
    const auto [transition, relation] = solve_transition(orbifold.system, resolution.system);
    return change_of_variables(transition, relation, orbifold.spec.variables,
                               resolution.spec.variables);
}

} // namespace

TEST_CASE("bundled files parse to the published data") {
    const GeometryBundle orbifold = load_orbifold();
    CHECK(orbifold.name == "z5-orbifold");
    CHECK(orbifold.spec.variables == std::vector<std::string>{"q4", "q5", "q0"});
    CHECK(orbifold.spec.brane_index == "m0");
    CHECK(orbifold.spec.root_order == 5);
    CHECK(orbifold.toric.rays.size() == 5);

    // ratio_num is (f+1)m0/5 + (2/5)m4 + m5/5
    const FramedLinearForm& a = orbifold.spec.ratio_num;
    CHECK(a.constant.is_zero());
    CHECK(a.coeffs.at("m0") == FramedRational(rat(1, 5), rat(1, 5)));
    CHECK(a.coeffs.at("m4") == FramedRational(rat(2, 5)));
    CHECK(a.coeffs.at("m5") == FramedRational(rat(1, 5)));

    const GeometryBundle resolution = load_resolution();
    CHECK(resolution.spec.variables == std::vector<std::string>{"qh1", "qh5", "qh0"});
    // the constraint is mh0 - 5 mh1 - 3 mh5 in Z_{>=0}
    REQUIRE(resolution.spec.constraints.size() == 1);
    const FramedLinearForm& c = resolution.spec.constraints[0];
    CHECK(c.coeffs.at("mh0") == FramedRational(rat(1)));
    CHECK(c.coeffs.at("mh1") == FramedRational(rat(-5)));
    CHECK(c.coeffs.at("mh5") == FramedRational(rat(-3)));
    CHECK(c.framing_free());
}

TEST_CASE("parser rejects malformed and inconsistent documents") {
    CHECK_THROWS_AS(parse_bundle("not json"), SyntaxError);
    CHECK_THROWS_AS(parse_bundle("{}"), SyntaxError);

    // zero denominator inside a coefficient
    std::string text = slurp(data_file("z5-orbifold.json"));
    const std::string needle = "\"m0\": \"1/5\", \"m4\": \"-1/5\"";
    REQUIRE(text.find(needle) != std::string::npos);
    std::string broken = text;
    broken.replace(broken.find(needle), needle.size(), "\"m0\": \"1/0\", \"m4\": \"-1/5\"");
    CHECK_THROWS_AS(parse_bundle(broken), SemanticError);

    // unknown index variable in a form
    broken = text;
    broken.replace(broken.find(needle), needle.size(), "\"bogus\": \"1/5\", \"m4\": \"-1/5\"");
    CHECK_THROWS_AS(parse_bundle(broken), SemanticError);

    // constraints must be framing-free
    broken = text;
    broken.replace(broken.find(needle), needle.size(),
                   "\"m0\": {\"c0\": \"1/5\", \"c1\": \"1\"}, \"m4\": \"-1/5\"");
    CHECK_THROWS_AS(parse_bundle(broken), SemanticError);

    // standalone spec documents need root_order
    const Json bundle = Json::parse(text);
    CHECK_THROWS_AS(parse_spec(bundle["spec"].dump()), SemanticError);
    Json spec = bundle["spec"];
    spec["root_order"] = 5;
    CHECK(parse_spec(spec.dump()).root_order == 5);
}

TEST_CASE("admissible_indices agrees with the brute-force oracle") {
    const GeometryBundle orbifold = load_orbifold();
    const GeometryBundle resolution = load_resolution();

    const auto res_oracle = oracle_resolution_indices(15);
    const auto orb_oracle = oracle_orbifold_indices(15);
    CHECK(res_oracle.size() == 86);
    CHECK(orb_oracle.size() == 86);

    CHECK(admissible_indices(resolution.spec, rat(0), 15) == res_oracle);
    CHECK(admissible_indices(orbifold.spec, rat(2), 15) == orb_oracle);

    // enumeration is framing-independent for these specs
    CHECK(admissible_indices(orbifold.spec, rat(17), 15) == orb_oracle);

    CHECK(admissible_indices(resolution.spec, rat(0), 1) ==
          std::vector<IndexVector>{idx({{"mh0", 1}, {"mh1", 0}, {"mh5", 0}})});
    CHECK(admissible_indices(resolution.spec, rat(0), 0).empty());
}

TEST_CASE("unbounded constraint systems are rejected") {
    GeometryBundle bundle = load_orbifold();
    bundle.spec.constraints.clear(); // nothing bounds m4, m5 any more
    CHECK_THROWS_AS(admissible_indices(bundle.spec, rat(2), 3), UnboundedRegion);
}

TEST_CASE("term: single-term published examples") {
    const GeometryBundle orbifold = load_orbifold();
    const GeometryBundle resolution = load_resolution();

    // resolution, (1,0,0), fhat = 0: coefficient zeta_10^7 = -zeta^2 on qh0
    {
        const auto [monomial, coeff] =
            term(resolution.spec, idx({{"mh0", 1}, {"mh1", 0}, {"mh5", 0}}), rat(0), 10);
        CHECK(monomial == Monomial().set("qh0", rat(1)));
        CHECK(coeff == root_power(10, 7));
    }
    // orbifold, (5,0,0), f = 2: coefficient 1 on q0^5
    {
        const auto [monomial, coeff] =
            term(orbifold.spec, idx({{"m0", 5}, {"m4", 0}, {"m5", 0}}), rat(2), 10);
        CHECK(monomial == Monomial().set("q0", rat(5)));
        CHECK(coeff == Cyclotomic::one(10));
    }
    // orbifold, (1,1,0), f = 2: coefficient 5*zeta_10^-3 on q0*q4
    {
        const auto [monomial, coeff] =
            term(orbifold.spec, idx({{"m0", 1}, {"m4", 1}, {"m5", 0}}), rat(2), 10);
        CHECK(monomial == Monomial().set("q0", rat(1)).set("q4", rat(1)));
        CHECK(coeff == rat(5) * root_power(10, -3));
        CHECK(coeff == rat(5) * root_power(10, 7));
    }
}

TEST_CASE("every exact coefficient matches the floating-point route") {
    // Independent oracle: the same general term evaluated with gamma_float
    // and complex exponentials, compared against the exact value through the
    // numeric embedding.
    const double pi = std::acos(-1.0);
    auto check_bundle = [&](const GeometryBundle& bundle, const Rational& framing) {
        const PuiseuxSeries series = build(bundle.spec, framing, 15);
        const auto indices = admissible_indices(bundle.spec, framing, 15);
        REQUIRE(series.size() == indices.size());
        const double f = framing.to_double();
        for (const IndexVector& m : indices) {
            const SuperpotentialSpec& spec = bundle.spec;
            double sign_exp = spec.sign.linear.eval(m, framing).to_double();
            for (const auto& floor_form : spec.sign.floors)
                sign_exp += std::floor(floor_form.eval(m, framing).to_double());
            (void)f;
            std::complex<double> expected = std::polar(1.0, pi * sign_exp);
            expected /= spec.prefactor.eval(m, framing).to_double();
            for (const auto& d : spec.factorial_factors)
                expected /= gamma_float(1.0 + d.eval(m, framing).to_double());
            expected *= gamma_float(spec.ratio_num.eval(m, framing).to_double());
            expected /= gamma_float(1.0 + spec.ratio_den.eval(m, framing).to_double());

            const std::complex<double> actual = coeff_of(series, spec.monomial_of(m)).embed();
            CHECK(std::abs(actual - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
        }
    };
    check_bundle(load_resolution(), rat(0));
    check_bundle(load_orbifold(), rat(2));
}

TEST_CASE("term assertions catch bad spec data") {
    GeometryBundle bundle = load_resolution();
    // a prefactor that vanishes on the first admissible index
    bundle.spec.prefactor.constant = FramedRational(rat(-1));
    bundle.spec.prefactor.coeffs["mh0"] = FramedRational(rat(1));
    CHECK_THROWS_AS(term(bundle.spec, idx({{"mh0", 1}, {"mh1", 0}, {"mh5", 0}}), rat(0), 10),
                    AssertionFailure);

    // a factorial argument that is not a nonnegative integer
    GeometryBundle frac = load_resolution();
    frac.spec.factorial_factors[1].coeffs["mh0"] = FramedRational(rat(1, 2));
    CHECK_THROWS_AS(term(frac.spec, idx({{"mh0", 1}, {"mh1", 0}, {"mh5", 0}}), rat(0), 10),
                    AssertionFailure);
}

TEST_CASE("non-generic framing reports the offending index") {
    // Toy spec engineered so Gamma(A)/Gamma(1+B) has an uncancelled pole:
    // A = 1 - k, B = k - 1 gives a negative shift through zero.
    SuperpotentialSpec spec;
    spec.variables = {"x"};
    spec.index_vars = {"k"};
    spec.brane_index = "k";
    spec.prefactor.coeffs["k"] = FramedRational(rat(1));
    spec.ratio_num.constant = FramedRational(rat(1));
    spec.ratio_num.coeffs["k"] = FramedRational(rat(-1));
    spec.ratio_den.constant = FramedRational(rat(-1));
    spec.ratio_den.coeffs["k"] = FramedRational(rat(1));
    spec.monomial_map["k"]["x"] = rat(1);
    spec.root_order = 1;

    CHECK_THROWS_AS(build(spec, rat(0), 1), NonGenericFraming);
    try {
        build(spec, rat(0), 1);
    } catch (const NonGenericFraming& e) {
        CHECK(std::string(e.what()).find("k=1") != std::string::npos);
    }
}

TEST_CASE("build: published counts and integrality invariants") {
    const GeometryBundle orbifold = load_orbifold();
    const GeometryBundle resolution = load_resolution();

    const PuiseuxSeries single = build(resolution.spec, rat(0), 1);
    REQUIRE(single.size() == 1);
    CHECK(single.terms().begin()->second == root_power(10, 7));

    CHECK(build(orbifold.spec, rat(2), 0).size() == 0);
    CHECK(build(orbifold.spec, rat(2), 15).size() == 86); // no cancellations

    // exhaustive invariants over both specs and integer framings: the Gamma
    // shift is an integer, factorial arguments land in Z_{>=0}, and the sign
    // exponent has denominator dividing 5
    for (long long fhat = 0; fhat <= 3; ++fhat) {
        const Rational f = rat(5 * fhat + 2);
        for (const IndexVector& m : admissible_indices(orbifold.spec, f, 15)) {
            const Rational shift = orbifold.spec.ratio_num.eval(m, f) -
                                   (rat(1) + orbifold.spec.ratio_den.eval(m, f));
            CHECK(shift.is_integer());
            for (const auto& d : orbifold.spec.factorial_factors) {
                const Rational v = d.eval(m, f);
                CHECK(v.is_integer());
                CHECK(v >= rat(0));
            }
            CHECK(Int(5) % orbifold.spec.sign.value(m, f).denominator() == 0);
        }
        for (const IndexVector& m : admissible_indices(resolution.spec, rat(fhat), 15)) {
            const Rational shift = resolution.spec.ratio_num.eval(m, rat(fhat)) -
                                   (rat(1) + resolution.spec.ratio_den.eval(m, rat(fhat)));
            CHECK(shift.is_integer());
            CHECK(Int(5) % resolution.spec.sign.value(m, rat(fhat)).denominator() == 0);
        }
    }
}

TEST_CASE("build is deterministic across worker counts") {
    const GeometryBundle orbifold = load_orbifold();
    const PuiseuxSeries one = build(orbifold.spec, rat(2), 15, 1);
    const PuiseuxSeries many = build(orbifold.spec, rat(2), 15, 4);
    CHECK(one.terms() == many.terms());
    CHECK(series_to_json(one).dump() == series_to_json(many).dump());
}

TEST_CASE("index correspondence is the published formula") {
    const GeometryBundle orbifold = load_orbifold();
    const GeometryBundle resolution = load_resolution();
    const ChangeOfVariables cov = paper_cov(orbifold, resolution);

    const IndexCorrespondence corr =
        index_correspondence(cov, orbifold.spec, resolution.spec, rat(2), rat(0), 15);
    CHECK(corr.pairs.size() == 86);
    for (const auto& [m, mapped] : corr.pairs) {
        CHECK(mapped.at("mh0") == m.at("m0"));
        CHECK(mapped.at("mh1") == (m.at("m0") - m.at("m4") - 3 * m.at("m5")) / 5);
        CHECK(mapped.at("mh5") == m.at("m5"));
    }

    // the (5,0,0) -> (5,1,0) instance
    const auto it = std::find_if(corr.pairs.begin(), corr.pairs.end(), [](const auto& p) {
        return p.first == idx({{"m0", 5}, {"m4", 0}, {"m5", 0}});
    });
    REQUIRE(it != corr.pairs.end());
    CHECK(it->second == idx({{"mh0", 5}, {"mh1", 1}, {"mh5", 0}}));

    // identity change of variables on one spec gives the identity pairing
    RationalMatrix id = RationalMatrix::Identity(3, 3);
    const ChangeOfVariables id_cov{resolution.spec.variables, resolution.spec.variables, id};
    const IndexCorrespondence self =
        index_correspondence(id_cov, resolution.spec, resolution.spec, rat(0), rat(0), 10);
    for (const auto& [m, mapped] : self.pairs) CHECK(m == mapped);

    // a doctored exponent matrix fails with a counterexample
    RationalMatrix halves = RationalMatrix::Identity(3, 3);
    halves(0, 0) = rat(1, 2);
    const ChangeOfVariables bad{resolution.spec.variables, resolution.spec.variables, halves};
    CHECK_THROWS_AS(
        index_correspondence(bad, resolution.spec, resolution.spec, rat(0), rat(0), 15),
        NotBijective);
}

TEST_CASE("determine_s1: published value and degenerate cases") {
    const GeometryBundle orbifold = load_orbifold();
    const GeometryBundle resolution = load_resolution();
    const ChangeOfVariables cov = paper_cov(orbifold, resolution);
    const IndexCorrespondence corr =
        index_correspondence(cov, orbifold.spec, resolution.spec, rat(2), rat(0), 15);

    CHECK(determine_s1(orbifold.spec, resolution.spec, corr, rat(2), rat(0)) == Int(5));

    // identical specs with the identity pairing: s1 = 1
    RationalMatrix id = RationalMatrix::Identity(3, 3);
    const ChangeOfVariables id_cov{resolution.spec.variables, resolution.spec.variables, id};
    const IndexCorrespondence self =
        index_correspondence(id_cov, resolution.spec, resolution.spec, rat(0), rat(0), 15);
    CHECK(determine_s1(resolution.spec, resolution.spec, self, rat(0), rat(0)) == Int(1));

    // prefactor mh0/3 against mh0/5: constant ratio 5/3 is not an integer
    SuperpotentialSpec fifths = resolution.spec;
    fifths.prefactor.coeffs["mh0"] = FramedRational(rat(1, 5));
    SuperpotentialSpec thirds = resolution.spec;
    thirds.prefactor.coeffs["mh0"] = FramedRational(rat(1, 3));
    CHECK_THROWS_AS(determine_s1(fifths, thirds, self, rat(0), rat(0)), NonIntegerScalar);

    // a prefactor mixing indices: the ratio varies across the set
    SuperpotentialSpec mixed = resolution.spec;
    mixed.prefactor.coeffs["mh1"] = FramedRational(rat(1));
    CHECK_THROWS_AS(determine_s1(resolution.spec, mixed, self, rat(0), rat(0)),
                    NonConstantRatio);
}

TEST_CASE("main identity: substituted orbifold series is 5x the resolution series") {
    const GeometryBundle orbifold = load_orbifold();
    const GeometryBundle resolution = load_resolution();
    for (long long fhat = 0; fhat <= 3; ++fhat) {
        const VerificationReport report =
            verify_correspondence(orbifold, resolution, rat(fhat), 15);
        CHECK(report.pass());
        CHECK(report.s1 == Int(5));
        CHECK(report.relation.scale == rat(5));
        CHECK(report.relation.offset == rat(2));
        CHECK(report.matched_terms == 86);
        CHECK(report.collisions == 0);
        CHECK(report.diff.empty());
    }
}

TEST_CASE("self-verification passes with s1 = 1") {
    const GeometryBundle orbifold = load_orbifold();
    const VerificationReport report = verify_correspondence(orbifold, orbifold, rat(3), 10);
    CHECK(report.pass());
    CHECK(report.s1 == Int(1));
    CHECK(report.relation == FramingRelation{rat(1), rat(0)});
}

TEST_CASE("wrong scaling flags every term") {
    const GeometryBundle orbifold = load_orbifold();
    const GeometryBundle resolution = load_resolution();
    const ChangeOfVariables cov = paper_cov(orbifold, resolution);

    const PuiseuxSeries w = build(orbifold.spec, rat(2), 15, 1, 10);
    const PuiseuxSeries what = build(resolution.spec, rat(0), 15, 1, 10);
    const PuiseuxSeries substituted = substitute(w, cov).series;

    // scaling by 4 instead of 5 mismatches every single term
    const DiffReport wrong = compare(substituted, scale(what, Int(4)));
    CHECK(wrong.mismatches.size() == 86);
    CHECK(wrong.left_only.empty());
    CHECK(wrong.right_only.empty());

    // without any scaling, every coefficient ratio is exactly 5
    const DiffReport unscaled = compare(substituted, what);
    CHECK(unscaled.mismatches.size() == 86);
    for (const DiffEntry& entry : unscaled.mismatches)
        CHECK(entry.left == rat(5) * entry.right);
}

TEST_CASE("verification survives row order conventions") {
    // A target with swapped non-brane rows still verifies: the transition
    // matrix and variable order absorb the permutation.
    const GeometryBundle orbifold = load_orbifold();
    GeometryBundle shuffled = load_resolution();
    shuffled.system.coeff0.row(0).swap(shuffled.system.coeff0.row(1));
    shuffled.system.coeff1.row(0).swap(shuffled.system.coeff1.row(1));
    std::swap(shuffled.spec.variables[0], shuffled.spec.variables[1]);

    const VerificationReport report = verify_correspondence(orbifold, shuffled, rat(1), 12);
    CHECK(report.pass());
    CHECK(report.s1 == Int(5));
}

TEST_CASE("perturbed bundle fails at the solve stage") {
    const GeometryBundle orbifold = load_orbifold();
    GeometryBundle perturbed = load_resolution();
    perturbed.system.coeff0(0, 3) = rat(-4);
    const VerificationReport report = verify_correspondence(orbifold, perturbed, rat(0), 15);
    CHECK(report.status == VerificationReport::Status::error);
    CHECK(report.stage == "solve_transition");
    CHECK_FALSE(report.message.empty());
}
