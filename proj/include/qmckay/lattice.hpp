#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qmckay/framed.hpp"
#include "qmckay/rational.hpp"

namespace qmckay {

// Rays of the toric fan; the Calabi-Yau condition puts every ray at
// height 1.
struct ToricData {
    std::vector<std::array<std::int64_t, 3>> rays;
};

// Extended charge vectors, one row per vector, entries affine in the
// framing symbol. The pair (coeff0, coeff1) encodes the matrix
// coeff0 + f * coeff1, which keeps the span computations plain exact
// linear algebra over Q.
struct ChargeVectorSystem {
    RationalMatrix coeff0;
    RationalMatrix coeff1;
    int n_toric = 0;      // leading columns carrying toric weights
    int brane_row = 0;    // row of the brane vector l^(0)
    std::string framing_symbol;
    int root_order = 1;   // N; sign exponents live in (1/N)Z

    Eigen::Index rows() const { return coeff0.rows(); }
    Eigen::Index cols() const { return coeff0.cols(); }
    FramedRational entry(Eigen::Index i, Eigen::Index j) const {
        return FramedRational(coeff0(i, j), coeff1(i, j));
    }
};

// Diagnostic pass over the system invariants: Calabi-Yau row sums and the
// (1,-1)/(0,0) brane-column pattern. Empty result means valid.
std::vector<std::string> validate_system(const ChargeVectorSystem& sys);

// T expressing source rows in target rows: src[a] = sum_b T[a][b] tgt[b]
// once the framing relation is substituted.
struct TransitionMatrix {
    RationalMatrix entries;
};

// f = scale * fhat + offset
struct FramingRelation {
    Rational scale;
    Rational offset;

    Rational apply(const Rational& fhat) const { return scale * fhat + offset; }
    FramingRelation compose(const FramingRelation& inner) const {
        // f = scale*(inner.scale*g + inner.offset) + offset
        return FramingRelation{scale * inner.scale, scale * inner.offset + offset};
    }
    friend bool operator==(const FramingRelation&, const FramingRelation&) = default;
};

// Solves T from the columns that are framing-free in both systems, then the
// affine framing relation from the framing-dependent columns, and finally
// checks the full identity symbolically. RankMismatch when the framing-free
// block leaves T underdetermined; NoFramingRelation when no affine relation
// makes every entry match.
std::pair<TransitionMatrix, FramingRelation> solve_transition(const ChargeVectorSystem& src,
                                                              const ChargeVectorSystem& tgt);

// Monomial substitution source var a -> prod_b target var b ^ exponents(a,b).
struct ChangeOfVariables {
    std::vector<std::string> source_vars;
    std::vector<std::string> target_vars;
    RationalMatrix exponents;

    // "q4 = qh1^(-1/5)" style rules, one per source variable.
    std::vector<std::string> rules() const;
};

ChangeOfVariables change_of_variables(const TransitionMatrix& transition,
                                      const FramingRelation& relation,
                                      std::vector<std::string> source_vars,
                                      std::vector<std::string> target_vars);

// Columns of a 2-row integer charge matrix, scaled to primitive vectors,
// deduplicated, in counterclockwise order starting from the positive
// x-axis. Zero columns carry no ray and are skipped. WrongRank unless
// exactly two rows are given.
std::vector<std::array<std::int64_t, 2>> secondary_fan_rays(
    const std::vector<std::vector<std::int64_t>>& charge_rows);

} // namespace qmckay
