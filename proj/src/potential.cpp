#include "qmckay/potential.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <exception>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "qmckay/gamma.hpp"

namespace qmckay {

std::string IndexVector::to_string() const {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (const auto& [var, v] : values) {
        if (!first) os << ", ";
        os << var << "=" << v;
        first = false;
    }
    os << ")";
    return os.str();
}

std::string SuperpotentialSpec::brane_variable() const {
    auto it = monomial_map.find(brane_index);
    if (it == monomial_map.end() || it->second.size() != 1)
        throw AssertionFailure("brane index " + brane_index +
                               " has no single q-variable in the monomial map");
    return it->second.begin()->first;
}

Monomial SuperpotentialSpec::monomial_of(const IndexVector& m) const {
    Monomial out;
    for (const auto& [index_var, assignment] : monomial_map) {
        const Rational mv(m.at(index_var));
        if (mv.is_zero()) continue;
        for (const auto& [q_var, coeff] : assignment)
            out.set(q_var, out.exponent(q_var) + coeff * mv);
    }
    return out;
}

namespace {

// Upper bounds for the index box from the constraint forms, by interval
// propagation: a form c + sum a_v m_v >= 0 bounds m_v whenever a_v < 0,
// using current bounds for positive coefficients and m_w >= 0 for negative
// ones. Fixpoint reached in at most #vars rounds or the region is declared
// unbounded.
std::map<std::string, long long> index_bounds(const SuperpotentialSpec& spec,
                                              const Rational& framing, long long m0_max) {
    std::map<std::string, std::optional<Rational>> upper;
    for (const std::string& v : spec.index_vars) upper[v] = std::nullopt;
    upper[spec.brane_index] = Rational(m0_max);

    IndexVector zero;
    for (std::size_t round = 0; round <= spec.index_vars.size(); ++round) {
        bool improved = false;
        for (const FramedLinearForm& form : spec.constraints) {
            for (const auto& [v, cv] : form.coeffs) {
                const Rational a = cv.at(framing);
                if (!(a < Rational(0))) continue;
                Rational numer = form.constant.at(framing);
                bool known = true;
                for (const auto& [w, cw] : form.coeffs) {
                    if (w == v) continue;
                    const Rational aw = cw.at(framing);
                    if (aw > Rational(0)) {
                        if (!upper[w]) {
                            known = false;
                            break;
                        }
                        numer += aw * *upper[w];
                    }
                    // aw <= 0 contributes nothing at m_w = 0
                }
                if (!known) continue;
                Rational bound = numer / -a;
                if (!upper[v] || bound < *upper[v]) {
                    upper[v] = bound;
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }

    std::map<std::string, long long> box;
    for (const std::string& v : spec.index_vars) {
        if (!upper[v])
            throw UnboundedRegion("index " + v + " is not bounded by the constraints given " +
                                  spec.brane_index + " <= " + std::to_string(m0_max));
        Int b = upper[v]->floor();
        box[v] = b < 0 ? -1 : b.convert_to<long long>();
    }
    return box;
}

bool is_admissible(const SuperpotentialSpec& spec, const IndexVector& m,
                   const Rational& framing) {
    for (const FramedLinearForm& form : spec.constraints) {
        const Rational v = form.eval(m, framing);
        if (!v.is_integer() || v < Rational(0)) return false;
    }
    return true;
}

} // namespace

std::vector<IndexVector> admissible_indices(const SuperpotentialSpec& spec,
                                            const Rational& framing, long long m0_max) {
    const auto box = index_bounds(spec, framing, m0_max);
    std::vector<IndexVector> out;

    // Nested lexicographic walk over index_vars; the brane index starts at 1.
    const std::size_t n = spec.index_vars.size();
    std::vector<long long> current(n, 0);
    std::vector<long long> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& v = spec.index_vars[i];
        lo[i] = (v == spec.brane_index) ? 1 : 0;
        hi[i] = box.at(v);
        if (v == spec.brane_index) hi[i] = std::min(hi[i], m0_max);
    }

    auto walk = [&](auto&& self, std::size_t depth) -> void {
        if (depth == n) {
            IndexVector m;
            for (std::size_t i = 0; i < n; ++i) m.values[spec.index_vars[i]] = current[i];
            if (is_admissible(spec, m, framing)) out.push_back(std::move(m));
            return;
        }
        for (long long v = lo[depth]; v <= hi[depth]; ++v) {
            current[depth] = v;
            self(self, depth + 1);
        }
    };
    walk(walk, 0);
    return out;
}

std::pair<Monomial, Cyclotomic> term(const SuperpotentialSpec& spec, const IndexVector& m,
                                     const Rational& framing, int cyclotomic_order) {
    // Sign factor: value must land in (1/N)Z.
    const Rational sign_value = spec.sign.value(m, framing);
    if (Int(spec.root_order) % sign_value.denominator() != 0)
        throw AssertionFailure("sign exponent " + sign_value.to_string() + " at " +
                               m.to_string() + " has denominator not dividing N = " +
                               std::to_string(spec.root_order));
    Cyclotomic coeff = sign_power(sign_value, cyclotomic_order);

    // 1 / (P(m) * prod_j D_j(m)!)
    const Rational prefactor = spec.prefactor.eval(m, framing);
    if (prefactor.is_zero())
        throw AssertionFailure("prefactor vanishes at " + m.to_string());
    Rational denom = prefactor;
    for (const FramedLinearForm& form : spec.factorial_factors) {
        const Rational d = form.eval(m, framing);
        if (!d.is_integer() || d < Rational(0))
            throw AssertionFailure("factorial argument " + d.to_string() + " at " +
                                   m.to_string() + " is not a nonnegative integer");
        denom *= exact_factorial(d.to_integer());
    }

    // Gamma(A) / Gamma(1 + B); the admissible set makes A - (1+B) an integer.
    const Rational a = spec.ratio_num.eval(m, framing);
    const Rational b = Rational(1) + spec.ratio_den.eval(m, framing);
    if (!(a - b).is_integer())
        throw AssertionFailure("Gamma arguments " + a.to_string() + ", " + b.to_string() +
                               " at " + m.to_string() + " do not differ by an integer");
    Rational ratio;
    try {
        ratio = gamma_ratio(a, b);
    } catch (const PoleError& e) {
        throw NonGenericFraming("framing " + framing.to_string() + " hits a Gamma pole at " +
                                m.to_string() + ": " + e.what());
    }

    coeff = (ratio / denom) * coeff;
    return {spec.monomial_of(m), std::move(coeff)};
}

PuiseuxSeries build(const SuperpotentialSpec& spec, const Rational& framing, long long m0_max,
                    int jobs, int cyclotomic_order) {
    if (cyclotomic_order == 0) cyclotomic_order = 2 * spec.root_order;
    const std::vector<IndexVector> indices = admissible_indices(spec, framing, m0_max);

    Region region{m0_max, {spec.variables.begin(), spec.variables.end()}};
    PuiseuxSeries series(cyclotomic_order, std::move(region));

    std::vector<std::pair<Monomial, Cyclotomic>> evaluated(
        indices.size(), {Monomial(), Cyclotomic::zero(cyclotomic_order)});
    std::vector<std::exception_ptr> errors(indices.size());

    auto eval_range = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < indices.size(); i += stride) {
            try {
                evaluated[i] = term(spec, indices[i], framing, cyclotomic_order);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    if (jobs <= 1 || indices.size() < 2) {
        eval_range(0, 1);
    } else {
        const std::size_t workers = std::min<std::size_t>(jobs, indices.size());
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(eval_range, w, workers);
        for (std::thread& t : pool) t.join();
    }

    // Merge in enumeration order; the earliest failure wins so diagnostics
    // match the single-threaded run.
    for (std::size_t i = 0; i < indices.size(); ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
    for (auto& [monomial, coeff] : evaluated) series.add_term(monomial, coeff);
    return series;
}

namespace {

// Index vars -> q-variable exponent matrix of a spec; the bijection check
// needs it square and invertible to read indices back off monomials.
RationalMatrix monomial_matrix(const SuperpotentialSpec& spec) {
    const Eigen::Index n = static_cast<Eigen::Index>(spec.index_vars.size());
    const Eigen::Index q = static_cast<Eigen::Index>(spec.variables.size());
    RationalMatrix mat = RationalMatrix::Constant(n, q, Rational(0));
    std::map<std::string, Eigen::Index> var_col;
    for (Eigen::Index j = 0; j < q; ++j) var_col[spec.variables[static_cast<std::size_t>(j)]] = j;
    for (Eigen::Index i = 0; i < n; ++i) {
        auto it = spec.monomial_map.find(spec.index_vars[static_cast<std::size_t>(i)]);
        if (it == spec.monomial_map.end()) continue;
        for (const auto& [q_var, coeff] : it->second) {
            auto jt = var_col.find(q_var);
            if (jt == var_col.end())
                throw AssertionFailure("monomial map uses unknown variable " + q_var);
            mat(i, jt->second) = coeff;
        }
    }
    return mat;
}

} // namespace

IndexCorrespondence index_correspondence(const ChangeOfVariables& cov,
                                         const SuperpotentialSpec& source,
                                         const SuperpotentialSpec& target,
                                         const Rational& framing_source,
                                         const Rational& framing_target, long long m0_max) {
    const std::vector<IndexVector> source_indices =
        admissible_indices(source, framing_source, m0_max);
    const std::vector<IndexVector> target_indices =
        admissible_indices(target, framing_target, m0_max);
    const std::set<IndexVector> target_set(target_indices.begin(), target_indices.end());

    const RationalMatrix e_src = monomial_matrix(source);
    const RationalMatrix e_tgt = monomial_matrix(target);
    if (e_tgt.rows() != e_tgt.cols())
        throw NotBijective("target monomial map is not square; indices cannot be read back");
    Eigen::FullPivLU<RationalMatrix> lu(e_tgt);
    if (!lu.isInvertible())
        throw NotBijective("target monomial map is not invertible; indices cannot be read back");
    const RationalMatrix e_tgt_inv = lu.inverse();

    if (e_src.cols() != cov.exponents.rows() || cov.exponents.cols() != e_tgt_inv.rows())
        throw NotBijective("change of variables does not match the monomial maps");

    // source index -> monomial exponents -> substituted exponents -> target index
    const RationalMatrix push = e_src * cov.exponents * e_tgt_inv;

    IndexCorrespondence corr;
    std::set<IndexVector> seen;
    for (const IndexVector& m : source_indices) {
        RationalRowVector row = RationalRowVector::Constant(
            static_cast<Eigen::Index>(source.index_vars.size()), Rational(0));
        for (Eigen::Index i = 0; i < row.size(); ++i)
            row(i) = Rational(m.at(source.index_vars[static_cast<std::size_t>(i)]));
        RationalRowVector image = row * push;

        IndexVector mapped;
        for (Eigen::Index j = 0; j < image.size(); ++j) {
            const Rational& v = image(j);
            if (!v.is_integer() || v < Rational(0))
                throw NotBijective("index " + m.to_string() + " maps to non-integral image " +
                                   v.to_string() + " for " +
                                   target.index_vars[static_cast<std::size_t>(j)]);
            mapped.values[target.index_vars[static_cast<std::size_t>(j)]] =
                v.to_integer().convert_to<long long>();
        }
        if (mapped.at(target.brane_index) != m.at(source.brane_index))
            throw NotBijective("brane index not preserved at " + m.to_string() + " -> " +
                               mapped.to_string());
        if (!target_set.count(mapped))
            throw NotBijective("image " + mapped.to_string() + " of " + m.to_string() +
                               " is not an admissible target index");
        if (!seen.insert(mapped).second)
            throw NotBijective("image " + mapped.to_string() + " hit twice; map not injective");
        corr.pairs.emplace_back(m, std::move(mapped));
    }
    if (seen.size() != target_set.size())
        throw NotBijective("correspondence misses " +
                           std::to_string(target_set.size() - seen.size()) +
                           " admissible target indices");
    return corr;
}

Int determine_s1(const SuperpotentialSpec& source, const SuperpotentialSpec& target,
                 const IndexCorrespondence& correspondence, const Rational& framing_source,
                 const Rational& framing_target) {
    std::optional<Rational> ratio;
    for (const auto& [m, mapped] : correspondence.pairs) {
        const Rational src = source.prefactor.eval(m, framing_source);
        const Rational tgt = target.prefactor.eval(mapped, framing_target);
        if (src.is_zero())
            throw NonConstantRatio("source prefactor vanishes at " + m.to_string());
        const Rational r = tgt / src;
        if (!ratio)
            ratio = r;
        else if (!(*ratio == r))
            throw NonConstantRatio("prefactor ratio is " + r.to_string() + " at " +
                                   m.to_string() + " but " + ratio->to_string() + " earlier");
    }
    if (!ratio) return Int(1); // empty truncation: neutral scaling
    if (!ratio->is_integer() || *ratio <= Rational(0))
        throw NonIntegerScalar("prefactor ratio " + ratio->to_string() +
                               " is not a positive integer");
    return ratio->to_integer();
}

} // namespace qmckay
