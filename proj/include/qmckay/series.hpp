#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qmckay/cyclotomic.hpp"
#include "qmckay/lattice.hpp"
#include "qmckay/rational.hpp"

namespace qmckay {

// Sparse monomial with rational exponents. Zero exponents are never stored,
// and the underlying sorted map gives the total ordering used everywhere
// for deterministic iteration.
class Monomial {
public:
    Monomial() = default;

    static Monomial one() { return Monomial(); }

    Monomial& set(const std::string& var, Rational exponent) {
        if (exponent.is_zero())
            exponents_.erase(var);
        else
            exponents_[var] = std::move(exponent);
        return *this;
    }

    const std::map<std::string, Rational>& exponents() const { return exponents_; }
    Rational exponent(const std::string& var) const {
        auto it = exponents_.find(var);
        return it == exponents_.end() ? Rational(0) : it->second;
    }
    bool is_one() const { return exponents_.empty(); }

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (const auto& [var, e] : o.exponents_) r.set(var, r.exponent(var) + e);
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.exponents_ == b.exponents_;
    }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        return a.exponents_ < b.exponents_;
    }

    std::string to_string() const;

private:
    std::map<std::string, Rational> exponents_;
};

// Truncation descriptor: the brane-index bound the series was built with,
// plus the ambient variable set. Series over different regions are not
// comparable.
struct Region {
    long long m0_max = 0;
    std::set<std::string> variables;

    friend bool operator==(const Region&, const Region&) = default;
};

// Finite sum of monomials with Cyclotomic coefficients. No stored
// coefficient is zero and all coefficients share one cyclotomic order.
class PuiseuxSeries {
public:
    PuiseuxSeries(int order, Region region) : order_(order), region_(std::move(region)) {}

    int order() const { return order_; }
    const Region& region() const { return region_; }
    const std::map<Monomial, Cyclotomic>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    // Merges into an existing term; drops the term when the sum vanishes.
    void add_term(const Monomial& monomial, const Cyclotomic& coeff);

private:
    int order_;
    Region region_;
    std::map<Monomial, Cyclotomic> terms_;
};

struct SubstitutionResult {
    PuiseuxSeries series;
    long long collisions = 0; // distinct source monomials merged into one image
};

// Applies the monomial substitution: exponent vectors transform by the
// change-of-variables matrix, coefficients ride along unchanged. Colliding
// images are added exactly and counted.
SubstitutionResult substitute(const PuiseuxSeries& s, const ChangeOfVariables& cov);

PuiseuxSeries scale(const PuiseuxSeries& s, const Int& c);

struct DiffEntry {
    Monomial monomial;
    Cyclotomic left;
    Cyclotomic right;
};

// Exact symmetric difference of two term maps, deterministically ordered.
struct DiffReport {
    std::vector<DiffEntry> mismatches;
    std::vector<Monomial> left_only;
    std::vector<Monomial> right_only;

    bool empty() const { return mismatches.empty() && left_only.empty() && right_only.empty(); }
};

DiffReport compare(const PuiseuxSeries& a, const PuiseuxSeries& b);

} // namespace qmckay
