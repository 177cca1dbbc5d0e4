#include "qmckay/series.hpp"

#include <sstream>

namespace qmckay {

std::string Monomial::to_string() const {
    if (exponents_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [var, e] : exponents_) {
        if (!first) os << "*";
        os << var;
        if (!(e == Rational(1))) os << "^(" << e.to_string() << ")";
        first = false;
    }
    return os.str();
}

void PuiseuxSeries::add_term(const Monomial& monomial, const Cyclotomic& coeff) {
    if (coeff.order() != order_)
        throw OrderMismatch("series holds coefficients of order " + std::to_string(order_) +
                            ", got " + std::to_string(coeff.order()));
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(monomial, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SubstitutionResult substitute(const PuiseuxSeries& s, const ChangeOfVariables& cov) {
    const Eigen::Index n_src = static_cast<Eigen::Index>(cov.source_vars.size());
    std::map<std::string, Eigen::Index> src_index;
    for (Eigen::Index a = 0; a < n_src; ++a) src_index[cov.source_vars[static_cast<std::size_t>(a)]] = a;

    Region region{s.region().m0_max, {cov.target_vars.begin(), cov.target_vars.end()}};
    SubstitutionResult result{PuiseuxSeries(s.order(), std::move(region)), 0};

    for (const auto& [monomial, coeff] : s.terms()) {
        RationalRowVector exps = RationalRowVector::Constant(n_src, Rational(0));
        for (const auto& [var, e] : monomial.exponents()) {
            auto it = src_index.find(var);
            if (it == src_index.end())
                throw UnknownVariable("variable " + var + " not covered by the substitution");
            exps(it->second) = e;
        }
        RationalRowVector image = exps * cov.exponents;
        Monomial mapped;
        for (Eigen::Index b = 0; b < image.size(); ++b)
            mapped.set(cov.target_vars[static_cast<std::size_t>(b)], image(b));
        if (result.series.terms().count(mapped)) ++result.collisions;
        result.series.add_term(mapped, coeff);
    }
    return result;
}

PuiseuxSeries scale(const PuiseuxSeries& s, const Int& c) {
    PuiseuxSeries out(s.order(), s.region());
    if (c == 0) return out;
    const Rational factor{c};
    for (const auto& [monomial, coeff] : s.terms()) out.add_term(monomial, factor * coeff);
    return out;
}

DiffReport compare(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    if (!(a.region() == b.region()))
        throw RegionMismatch("series regions differ; align truncations before comparing");
    DiffReport report;
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    while (ia != a.terms().end() || ib != b.terms().end()) {
        if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
            report.left_only.push_back(ia->first);
            ++ia;
        } else if (ia == a.terms().end() || ib->first < ia->first) {
            report.right_only.push_back(ib->first);
            ++ib;
        } else {
            if (!(ia->second == ib->second))
                report.mismatches.push_back({ia->first, ia->second, ib->second});
            ++ia;
            ++ib;
        }
    }
    return report;
}

} // namespace qmckay
