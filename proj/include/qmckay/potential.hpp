#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qmckay/framed.hpp"
#include "qmckay/lattice.hpp"
#include "qmckay/series.hpp"

namespace qmckay {

// Nonnegative integer point of the index lattice; the distinguished brane
// index is always >= 1.
struct IndexVector {
    std::map<std::string, long long> values;

    long long at(const std::string& var) const {
        auto it = values.find(var);
        return it == values.end() ? 0 : it->second;
    }
    friend bool operator==(const IndexVector&, const IndexVector&) = default;
    friend bool operator<(const IndexVector& a, const IndexVector& b) {
        return a.values < b.values;
    }
    std::string to_string() const;
};

// constant + sum_v coeffs[v] * m_v with coefficients affine in the framing
// symbol; evaluation at integers and a rational framing value is rational.
struct FramedLinearForm {
    FramedRational constant;
    std::map<std::string, FramedRational> coeffs;

    FramedRational eval_symbolic(const IndexVector& m) const {
        FramedRational sum = constant;
        for (const auto& [var, c] : coeffs) sum += Rational(m.at(var)) * c;
        return sum;
    }
    Rational eval(const IndexVector& m, const Rational& framing) const {
        return eval_symbolic(m).at(framing);
    }
    bool framing_free() const {
        if (!constant.framing_free()) return false;
        for (const auto& [var, c] : coeffs)
            if (!c.framing_free()) return false;
        return true;
    }
};

// linear(m, f) + sum_i floor(form_i(m, f)); the value feeds (-1)^value, so
// its denominator must divide the root order N.
struct SignExpression {
    FramedLinearForm linear;
    std::vector<FramedLinearForm> floors;

    Rational value(const IndexVector& m, const Rational& framing) const {
        Rational v = linear.eval(m, framing);
        for (const FramedLinearForm& form : floors) v += Rational(form.eval(m, framing).floor());
        return v;
    }
};

// Declarative description of one superpotential series: the general term is
//
//           sign         gamma_ratio(A(m), 1 + B(m))
//   (-1)      *  ---------------------------------------------  *  q^{map(m)}
//                 P(m) * prod_j D_j(m)!
//
// summed over the admissible index set.
struct SuperpotentialSpec {
    std::vector<std::string> variables;   // q-variables, ordered as the charge rows
    std::vector<std::string> index_vars;  // summation indices, ordered
    std::string brane_index;              // distinguished index, >= 1
    std::vector<FramedLinearForm> constraints; // framing-free, required in Z_{>=0}
    FramedLinearForm prefactor;                // P
    std::vector<FramedLinearForm> factorial_factors; // D_j
    FramedLinearForm ratio_num;                // A
    FramedLinearForm ratio_den;                // B
    SignExpression sign;
    std::map<std::string, std::map<std::string, Rational>> monomial_map; // index var -> {q var: coeff}
    int root_order = 1;                        // N

    std::string brane_variable() const;
    Monomial monomial_of(const IndexVector& m) const;
};

// One geometry: fan rays, the GLSM charge rows behind the secondary fan,
// the extended charge-vector system, and the superpotential data.
struct GeometryBundle {
    std::string name;
    ToricData toric;
    std::vector<std::vector<std::int64_t>> glsm_rows;
    ChargeVectorSystem system;
    SuperpotentialSpec spec;
};

// All index vectors with 1 <= brane <= m0_max, other indices >= 0, and
// every constraint form a nonnegative integer; lexicographic in index_vars
// order. UnboundedRegion when the constraints fail to bound the box.
std::vector<IndexVector> admissible_indices(const SuperpotentialSpec& spec,
                                            const Rational& framing, long long m0_max);

// One exact term. The integer-shift and nonnegative-integer preconditions
// of the Gamma factors are re-checked here and hard-fail as
// AssertionFailure; an uncancelled pole becomes NonGenericFraming.
std::pair<Monomial, Cyclotomic> term(const SuperpotentialSpec& spec, const IndexVector& m,
                                     const Rational& framing, int cyclotomic_order);

// Sum of term() over admissible_indices(); deterministic for any jobs
// count. cyclotomic_order 0 means the spec's own 2N.
PuiseuxSeries build(const SuperpotentialSpec& spec, const Rational& framing, long long m0_max,
                    int jobs = 1, int cyclotomic_order = 0);

struct IndexCorrespondence {
    std::vector<std::pair<IndexVector, IndexVector>> pairs; // source enumeration order
};

// Verifies that pushing each admissible source index through the change of
// variables lands bijectively on the admissible target set, preserving the
// brane index. NotBijective carries a counterexample.
IndexCorrespondence index_correspondence(const ChangeOfVariables& cov,
                                         const SuperpotentialSpec& source,
                                         const SuperpotentialSpec& target,
                                         const Rational& framing_source,
                                         const Rational& framing_target, long long m0_max);

// The constant c with target prefactor = c * source prefactor across the
// whole correspondence; asserted to be a positive integer. An empty
// correspondence yields the neutral scaling 1.
Int determine_s1(const SuperpotentialSpec& source, const SuperpotentialSpec& target,
                 const IndexCorrespondence& correspondence, const Rational& framing_source,
                 const Rational& framing_target);

} // namespace qmckay
